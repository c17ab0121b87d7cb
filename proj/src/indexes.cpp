#include "ppursuit/indexes.hpp"

#include <cmath>
#include <string>

#include "ppursuit/error.hpp"
#include "ppursuit/linalg.hpp"
#include "ppursuit/quadrature.hpp"
#include "ppursuit/random.hpp"

namespace ppursuit::indexes {

namespace {

void check_direction(const Vector& a, std::size_t dim, const char* who) {
  if (a.size() != dim) {
    throw Error(ExitCode::dimension,
                std::string(who) + ": direction has length " + std::to_string(a.size()) +
                    " but the data has " + std::to_string(dim) + " columns");
  }
}

// Plug-in standardization (population sd). Returns false when degenerate.
struct Standardized {
  Vector y;
  double sd = 0.0;
};

Standardized plugin_standardize(std::span<const double> z, const char* who) {
  const std::size_t n = z.size();
  if (n < 2) {
    throw Error(ExitCode::dimension, std::string(who) + " requires at least two samples");
  }
  double mean = 0.0;
  for (double v : z) {
    if (!std::isfinite(v)) {
      throw Error(ExitCode::dimension, std::string(who) + ": sample contains a non-finite value");
    }
    mean += v;
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : z) {
    const double t = v - mean;
    var += t * t;
  }
  var /= static_cast<double>(n);
  if (var <= 0.0) {
    throw Error(ExitCode::dimension, std::string(who) + ": projected sample is constant");
  }
  Standardized s;
  s.sd = std::sqrt(var);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.y[i] = (z[i] - mean) / s.sd;
  return s;
}

IndexValue cumulant_impl(std::span<const double> z, bool want_gradient) {
  const Standardized s = plugin_standardize(z, "cumulant index");
  const std::size_t n = s.y.size();
  double m3 = 0.0;
  double m4 = 0.0;
  for (double y : s.y) {
    const double y2 = y * y;
    m3 += y2 * y;
    m4 += y2 * y2;
  }
  m3 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double excess = m4 - 3.0;

  IndexValue out;
  out.value = m3 * m3 / 12.0 + excess * excess / 48.0;
  if (want_gradient) {
    Vector g(n);
    const double inv_ns = 1.0 / (static_cast<double>(n) * s.sd);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = s.y[i];
      const double y2 = y * y;
      g[i] = inv_ns * ((m3 / 2.0) * (y2 - 1.0 - m3 * y) +
                       (excess / 6.0) * (y2 * y - m3 - m4 * y));
    }
    out.gradient = std::move(g);
  }
  return out;
}

IndexValue logcosh_impl(std::span<const double> z, double alpha, double baseline,
                        bool want_gradient) {
  if (!(alpha >= 1.0) || !(alpha <= 2.0)) {
    throw Error(ExitCode::dimension, "logcosh index: alpha must lie in [1, 2]");
  }
  const Standardized s = plugin_standardize(z, "logcosh index");
  const std::size_t n = s.y.size();
  double mean_g = 0.0;
  for (double y : s.y) mean_g += log_cosh(alpha * y) / alpha;
  mean_g /= static_cast<double>(n);
  const double gap = mean_g - baseline;

  IndexValue out;
  out.value = 0.5 * gap * gap;
  if (want_gradient) {
    double t1 = 0.0;  // mean tanh(alpha y)
    double t2 = 0.0;  // mean tanh(alpha y) * y
    Vector th(n);
    for (std::size_t i = 0; i < n; ++i) {
      th[i] = std::tanh(alpha * s.y[i]);
      t1 += th[i];
      t2 += th[i] * s.y[i];
    }
    t1 /= static_cast<double>(n);
    t2 /= static_cast<double>(n);
    Vector g(n);
    const double scale = gap / (static_cast<double>(n) * s.sd);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = scale * (th[i] - t1 - s.y[i] * t2);
    }
    out.gradient = std::move(g);
  }
  return out;
}

// Chain rule through z = X a: dQ/da = X^T dQ/dz.
IndexValue chain_through_projection(const Matrix& x, IndexValue iv_z) {
  IndexValue out;
  out.value = iv_z.value;
  if (iv_z.gradient) {
    out.gradient = matvec_transpose(x, *iv_z.gradient);
  }
  return out;
}

void check_group(const GroupStats& g, const char* who) {
  if (g.mean.empty()) {
    throw Error(ExitCode::dimension, std::string(who) + ": group mean is empty");
  }
  if (g.cov.rows() != g.mean.size() || g.cov.cols() != g.mean.size()) {
    throw Error(ExitCode::dimension, std::string(who) + ": covariance shape does not match mean");
  }
}

Matrix pooled_covariance(const GroupStats& g1, const GroupStats& g2, const char* who) {
  check_group(g1, who);
  check_group(g2, who);
  if (g1.mean.size() != g2.mean.size()) {
    throw Error(ExitCode::dimension, std::string(who) + ": groups have different dimensions");
  }
  const std::size_t d = g1.mean.size();
  Matrix pooled(d, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      pooled(i, j) = 0.5 * (g1.cov(i, j) + g2.cov(i, j));
    }
  }
  return pooled;
}

IndexValue lda_eval(const Vector& a, const Vector& mean_gap, const Matrix& pooled,
                    bool want_gradient) {
  check_direction(a, mean_gap.size(), "lda index");
  const double ad = dot(a, mean_gap);
  const Vector sa = matvec(pooled, a);
  const double asa = dot(a, sa);
  if (!(asa > 0.0)) {
    throw Error(ExitCode::dimension, "lda index: a^T Sigma a is not positive");
  }
  IndexValue out;
  const double ratio = ad / asa;
  out.value = ad * ratio;
  if (want_gradient) {
    Vector g(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      g[i] = 2.0 * ratio * (mean_gap[i] - ratio * sa[i]);
    }
    out.gradient = std::move(g);
  }
  return out;
}

}  // namespace

double log_cosh(double t) {
  const double at = std::abs(t);
  // log cosh t = |t| + log1p(exp(-2|t|)) - log 2, stable for large |t|.
  return at + std::log1p(std::exp(-2.0 * at)) - 0.6931471805599453;
}

double variance_index(const Vector& a, const Matrix& x) {
  check_direction(a, x.cols(), "variance index");
  if (x.rows() < 2) {
    throw Error(ExitCode::dimension, "variance index requires at least two rows");
  }
  const Vector z = matvec(x, a);
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(z.size());
  double ss = 0.0;
  for (double v : z) {
    const double t = v - mean;
    ss += t * t;
  }
  return ss / static_cast<double>(z.size() - 1);
}

double mean_index(const Vector& a, const Matrix& x) {
  check_direction(a, x.cols(), "mean index");
  const Vector mu = linalg::column_means(x);
  return dot(a, mu);
}

double cumulant_negentropy(std::span<const double> z) {
  return cumulant_impl(z, false).value;
}

IndexValue cumulant_negentropy_with_gradient(std::span<const double> z) {
  return cumulant_impl(z, true);
}

double logcosh_gaussian_baseline(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ExitCode::dimension, "logcosh baseline: alpha must be positive and finite");
  }
  // E[G(N(0,1))] by composite Simpson on [-12, 12], 4096 intervals; the
  // truncated tail mass is far below the 1e-12 scale that matters here.
  const double inv_sqrt_2pi = 0.3989422804014327;
  const auto f = [&](double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x) * (log_cosh(alpha * x) / alpha);
  };
  return quadrature::simpson(f, -12.0, 12.0, 4096);
}

double logcosh_negentropy(std::span<const double> z, double alpha) {
  return logcosh_impl(z, alpha, logcosh_gaussian_baseline(alpha), false).value;
}

IndexValue logcosh_negentropy_with_gradient(std::span<const double> z, double alpha,
                                            double baseline) {
  return logcosh_impl(z, alpha, baseline, true);
}

double lda_index(const Vector& a, const GroupStats& g1, const GroupStats& g2) {
  const Matrix pooled = pooled_covariance(g1, g2, "lda index");
  linalg::cholesky(pooled);  // positive-definiteness check
  Vector gap(g1.mean.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = g1.mean[i] - g2.mean[i];
  return lda_eval(a, gap, pooled, false).value;
}

Vector lda_direction(const GroupStats& g1, const GroupStats& g2) {
  const Matrix pooled = pooled_covariance(g1, g2, "lda direction");
  Vector gap(g1.mean.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = g1.mean[i] - g2.mean[i];
  if (norm2(gap) == 0.0) {
    throw Error(ExitCode::dimension, "lda direction: group means coincide");
  }
  const Matrix l = linalg::cholesky(pooled);
  return normalized(linalg::cholesky_solve(l, gap));
}

double cca_index(const Vector& a, const Vector& b, const Matrix& x, const Matrix& y) {
  check_direction(a, x.cols(), "cca index");
  check_direction(b, y.cols(), "cca index");
  if (x.rows() != y.rows()) {
    throw Error(ExitCode::dimension, "cca index: views have different row counts");
  }
  if (x.rows() < 2) {
    throw Error(ExitCode::dimension, "cca index requires at least two rows");
  }
  const Vector u = matvec(x, a);
  const Vector v = matvec(y, b);
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(u.size());
  mv /= static_cast<double>(v.size());
  double suu = 0.0;
  double svv = 0.0;
  double suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    suu += du * du;
    svv += dv * dv;
    suv += du * dv;
  }
  if (suu <= 0.0 || svv <= 0.0) {
    throw Error(ExitCode::dimension, "cca index: a projection has zero variance");
  }
  const double r = suv / std::sqrt(suu * svv);
  return std::max(-1.0, std::min(1.0, r));
}

JlDistortion jl_distortion(const Matrix& x, const Matrix& z) {
  if (x.rows() != z.rows()) {
    throw Error(ExitCode::dimension, "jl distortion: point sets have different sizes");
  }
  if (x.rows() < 2) {
    throw Error(ExitCode::dimension, "jl distortion requires at least two points");
  }
  JlDistortion out;
  const std::size_t n = x.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x.row(i);
    const double* zi = z.row(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = x.row(j);
      const double* zj = z.row(j);
      double dx = 0.0;
      for (std::size_t k = 0; k < x.cols(); ++k) {
        const double t = xi[k] - xj[k];
        dx += t * t;
      }
      if (dx == 0.0) {
        ++out.skipped;
        continue;
      }
      double dz = 0.0;
      for (std::size_t k = 0; k < z.cols(); ++k) {
        const double t = zi[k] - zj[k];
        dz += t * t;
      }
      const double abs_err = std::abs(dz - dx);
      out.sum_abs += abs_err;
      out.max_relative = std::max(out.max_relative, abs_err / dx);
    }
  }
  return out;
}

Matrix random_projection(std::size_t d, std::size_t r, std::uint64_t seed) {
  if (r < 1 || r > d) {
    throw Error(ExitCode::dimension,
                "random projection: target dimension must satisfy 1 <= r <= d (got r = " +
                    std::to_string(r) + ", d = " + std::to_string(d) + ")");
  }
  Rng rng(derive_seed(seed, stream::projection, 0));
  Matrix p(r, d, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(r));
  for (std::size_t i = 0; i < r; ++i) {
    double* row = p.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = rng.normal() * scale;
  }
  return p;
}

IndexValue VarianceIndex::evaluate(const Vector& a, const Matrix& x, bool want_gradient) const {
  check_direction(a, x.cols(), "variance index");
  if (x.rows() < 2) {
    throw Error(ExitCode::dimension, "variance index requires at least two rows");
  }
  const Vector z = matvec(x, a);
  const std::size_t n = z.size();
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : z) {
    const double t = v - mean;
    ss += t * t;
  }
  IndexValue out;
  out.value = ss / static_cast<double>(n - 1);
  if (want_gradient) {
    // dQ/dz_i = 2 (z_i - mean) / (n - 1); pulled back this is exactly 2 C a.
    Vector gz(n);
    const double c = 2.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) gz[i] = c * (z[i] - mean);
    out.gradient = matvec_transpose(x, gz);
  }
  return out;
}

IndexValue MeanIndex::evaluate(const Vector& a, const Matrix& x, bool want_gradient) const {
  check_direction(a, x.cols(), "mean index");
  const Vector mu = linalg::column_means(x);
  IndexValue out;
  out.value = dot(a, mu);
  if (want_gradient) out.gradient = mu;
  return out;
}

IndexValue CumulantIndex::evaluate(const Vector& a, const Matrix& x, bool want_gradient) const {
  check_direction(a, x.cols(), "cumulant index");
  const Vector z = matvec(x, a);
  return chain_through_projection(x, cumulant_impl(z, want_gradient));
}

LogCoshIndex::LogCoshIndex(double alpha)
    : alpha_(alpha), baseline_(logcosh_gaussian_baseline(alpha)) {
  if (!(alpha >= 1.0) || !(alpha <= 2.0)) {
    throw Error(ExitCode::dimension, "logcosh index: alpha must lie in [1, 2]");
  }
}

IndexValue LogCoshIndex::evaluate(const Vector& a, const Matrix& x, bool want_gradient) const {
  check_direction(a, x.cols(), "logcosh index");
  const Vector z = matvec(x, a);
  return chain_through_projection(x, logcosh_impl(z, alpha_, baseline_, want_gradient));
}

LdaIndex::LdaIndex(GroupStats g1, GroupStats g2)
    : pooled_cov_(pooled_covariance(g1, g2, "lda index")) {
  linalg::cholesky(pooled_cov_);  // fail fast if not positive definite
  mean_gap_.resize(g1.mean.size());
  for (std::size_t i = 0; i < mean_gap_.size(); ++i) {
    mean_gap_[i] = g1.mean[i] - g2.mean[i];
  }
}

IndexValue LdaIndex::evaluate(const Vector& a, const Matrix& /*x*/, bool want_gradient) const {
  return lda_eval(a, mean_gap_, pooled_cov_, want_gradient);
}

}  // namespace ppursuit::indexes
