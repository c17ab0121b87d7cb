#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "ppursuit/matrix.hpp"

namespace ppursuit::indexes {

struct IndexValue {
  double value = 0.0;
  std::optional<Vector> gradient;  // with respect to the direction a
};

// --- scalar index functions -------------------------------------------------

// Sample variance (n-1 denominator) of the projection X a.
double variance_index(const Vector& a, const Matrix& x);

// Mean of the projection X a.
double mean_index(const Vector& a, const Matrix& x);

// Cumulant-based negentropy approximation of a projected sample:
// k3^2/12 + k4^2/48 on the plug-in standardized sample (population sd),
// where k3 is the third moment and k4 the excess kurtosis.
double cumulant_negentropy(std::span<const double> z);

// Same, with the gradient with respect to the raw samples z.
IndexValue cumulant_negentropy_with_gradient(std::span<const double> z);

// Smooth negentropy surrogate 0.5 * (mean G(z*) - baseline)^2 with
// G(x) = log(cosh(alpha x)) / alpha on the plug-in standardized sample and
// baseline E[G(N(0,1))]. Zero iff the projected sample matches the Gaussian
// average of G.
double logcosh_negentropy(std::span<const double> z, double alpha = 1.0);
IndexValue logcosh_negentropy_with_gradient(std::span<const double> z, double alpha,
                                            double baseline);

// E[G(N(0,1))] by quadrature. alpha must be positive.
double logcosh_gaussian_baseline(double alpha);

// Numerically stable log(cosh(t)).
double log_cosh(double t);

// --- two-group (LDA) and two-view (CCA) indexes ------------------------------

struct GroupStats {
  Vector mean;
  Matrix cov;
};

// Rayleigh quotient (a . (mu1 - mu2))^2 / (a^T Sigma a) with the pooled
// covariance Sigma = (cov1 + cov2) / 2. Sigma must be positive definite.
double lda_index(const Vector& a, const GroupStats& g1, const GroupStats& g2);

// Closed-form maximizer Sigma^{-1} (mu1 - mu2), normalized.
Vector lda_direction(const GroupStats& g1, const GroupStats& g2);

// Pearson correlation between X a and Y b (views share rows).
double cca_index(const Vector& a, const Vector& b, const Matrix& x, const Matrix& y);

// --- random projections -------------------------------------------------------

struct JlDistortion {
  double sum_abs = 0.0;        // sum over pairs of |dist^2(z) - dist^2(x)|
  double max_relative = 0.0;   // max over pairs of the relative error
  std::size_t skipped = 0;     // pairs with zero original distance
};

// Compares all pairwise squared distances of x (n x d) and z (n x r).
JlDistortion jl_distortion(const Matrix& x, const Matrix& z);

// r x d matrix with i.i.d. N(0,1)/sqrt(r) entries; requires 1 <= r <= d.
Matrix random_projection(std::size_t d, std::size_t r, std::uint64_t seed);

// --- optimizer-facing interface ----------------------------------------------

// A projection index the optimizer can maximize over unit directions. The
// data matrix is passed to evaluate() so one index object can serve several
// datasets; indexes defined by sufficient statistics (LDA) ignore it.
class ProjectionIndex {
 public:
  virtual ~ProjectionIndex() = default;
  virtual std::string_view name() const = 0;
  // True when the index assumes whitened input (the CLI whitens first).
  virtual bool wants_whitened_input() const { return false; }
  virtual IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const = 0;
};

class VarianceIndex final : public ProjectionIndex {
 public:
  std::string_view name() const override { return "variance"; }
  IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const override;
};

class MeanIndex final : public ProjectionIndex {
 public:
  std::string_view name() const override { return "mean"; }
  IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const override;
};

class CumulantIndex final : public ProjectionIndex {
 public:
  std::string_view name() const override { return "cumulant"; }
  bool wants_whitened_input() const override { return true; }
  IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const override;
};

class LogCoshIndex final : public ProjectionIndex {
 public:
  explicit LogCoshIndex(double alpha = 1.0);
  std::string_view name() const override { return "logcosh"; }
  bool wants_whitened_input() const override { return true; }
  IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const override;
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  double baseline_;
};

// Evaluates from the group statistics it was built with; the data argument
// only has to agree in dimension.
class LdaIndex final : public ProjectionIndex {
 public:
  LdaIndex(GroupStats g1, GroupStats g2);
  std::string_view name() const override { return "lda"; }
  IndexValue evaluate(const Vector& a, const Matrix& x, bool want_gradient) const override;

 private:
  Vector mean_gap_;
  Matrix pooled_cov_;
};

}  // namespace ppursuit::indexes
