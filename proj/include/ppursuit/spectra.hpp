#pragma once

#include <cstdint>
#include <functional>

#include "ppursuit/matrix.hpp"
#include "ppursuit/random.hpp"

namespace ppursuit::spectra {

// Marcenko-Pastur support endpoints for aspect ratio gamma = d/n.
struct MPParams {
  double gamma;
  double b_minus;
  double b_plus;

  explicit MPParams(double gamma);
};

// Marcenko-Pastur density at k for gamma in (0, 1]; zero off the support.
double mp_density(double k, double gamma);

// Integral of the density over its support (== 1; exposed as a self-check).
// Uses the trigonometric substitution that removes the edge singularities.
double mp_total_mass(double gamma);

// Integral of the density over [lo, hi] (clipped to the support).
double mp_mass_in(double lo, double hi, double gamma);

struct SpectralSample {
  Vector eigenvalues;  // ascending
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
};

// Eigenvalues of X^T X / n for an n x d standard Gaussian X. Requires
// n >= d >= 1 and n*d <= 1e8.
SpectralSample simulate_wishart_esd(std::size_t n, std::size_t d, std::uint64_t seed);

// L1 distance between the eigenvalue histogram (64 equal-width bins on
// [0, 1.1 b_plus]) and the Marcenko-Pastur law: sum over bins of
// |observed fraction - MP mass in bin|.
double esd_vs_mp_distance(const SpectralSample& sample);

// Draws an n x d matrix with i.i.d. entries from `marginal` (default:
// uniform on (-sqrt(3), sqrt(3)), i.e. mean 0 and variance 1), projects it
// onto m random unit directions, standardizes each projection, and returns
// the m KS distances to the standard normal, in direction order.
Vector df_projection_experiment(std::size_t n, std::size_t d, std::size_t m_directions,
                                std::uint64_t seed,
                                const std::function<double(Rng&)>& marginal = {});

// Median of a sample (average of the middle two for even sizes).
double median(Vector values);

}  // namespace ppursuit::spectra
