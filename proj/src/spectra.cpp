#include "ppursuit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppursuit/error.hpp"
#include "ppursuit/info_theory.hpp"
#include "ppursuit/linalg.hpp"
#include "ppursuit/quadrature.hpp"

namespace ppursuit::spectra {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw Error(ExitCode::dimension,
                "marcenko-pastur: gamma must lie in (0, 1]; the gamma > 1 regime adds a "
                "point mass at zero that this density does not represent");
  }
}

// Mass integral on the support parametrized as k(t) = b- cos^2 t + b+ sin^2 t,
// which absorbs the inverse-square-root edge singularities: the integrand
// becomes (b+ - b-)^2 sin^2 t cos^2 t / (pi gamma k(t)), smooth on [0, pi/2].
double mass_by_angle(double t_lo, double t_hi, const MPParams& p) {
  const double span = p.b_plus - p.b_minus;
  const auto f = [&](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double k = p.b_minus * c * c + p.b_plus * s * s;
    if (k <= 0.0) {
      // k vanishes only at t = 0 when b- = 0 (gamma = 1), where s^2/k -> 1/b+;
      // substitute the finite limit of the integrand.
      return span * span * c * c / (kPi * p.gamma * p.b_plus);
    }
    return span * span * s * s * c * c / (kPi * p.gamma * k);
  };
  return quadrature::adaptive_simpson(f, t_lo, t_hi, 1e-12);
}

double angle_of(double k, const MPParams& p) {
  const double ratio = (k - p.b_minus) / (p.b_plus - p.b_minus);
  return std::asin(std::sqrt(std::clamp(ratio, 0.0, 1.0)));
}

}  // namespace

MPParams::MPParams(double g) : gamma(g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw Error(ExitCode::dimension, "marcenko-pastur: gamma must be positive");
  }
  const double root = std::sqrt(g);
  b_minus = (1.0 - root) * (1.0 - root);
  b_plus = (1.0 + root) * (1.0 + root);
}

double mp_density(double k, double gamma) {
  check_gamma(gamma);
  const MPParams p(gamma);
  if (!(k > p.b_minus) || !(k < p.b_plus)) return 0.0;
  return std::sqrt((p.b_plus - k) * (k - p.b_minus)) / (2.0 * kPi * gamma * k);
}

double mp_total_mass(double gamma) {
  check_gamma(gamma);
  return mass_by_angle(0.0, kPi / 2.0, MPParams(gamma));
}

double mp_mass_in(double lo, double hi, double gamma) {
  check_gamma(gamma);
  const MPParams p(gamma);
  const double a = std::max(lo, p.b_minus);
  const double b = std::min(hi, p.b_plus);
  if (!(b > a)) return 0.0;
  return mass_by_angle(angle_of(a, p), angle_of(b, p), p);
}

SpectralSample simulate_wishart_esd(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d < 1 || n < d) {
    throw Error(ExitCode::dimension, "wishart simulation requires n >= d >= 1");
  }
  if (static_cast<double>(n) * static_cast<double>(d) > 1e8) {
    throw Error(ExitCode::dimension, "wishart simulation: n*d exceeds the 1e8 size guard");
  }
  Rng rng(derive_seed(seed, stream::data, 0));
  Matrix x(n, d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = x.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = rng.normal();
  }
  // Gram matrix X^T X / n, accumulated row by row (upper triangle).
  Matrix s(d, d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = x.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double v = row[j];
      if (v == 0.0) continue;
      double* sj = s.row(j);
      for (std::size_t k = j; k < d; ++k) sj[k] += v * row[k];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j; k < d; ++k) {
      const double v = s(j, k) * inv_n;
      s(j, k) = v;
      s(k, j) = v;
    }
  }
  SpectralSample out;
  out.eigenvalues = linalg::sym_eigenvalues_ascending(s);
  out.n = n;
  out.d = d;
  out.seed = seed;
  return out;
}

double esd_vs_mp_distance(const SpectralSample& sample) {
  if (sample.d < 1 || sample.n < sample.d) {
    throw Error(ExitCode::dimension, "esd distance requires n >= d >= 1");
  }
  if (sample.eigenvalues.size() != sample.d) {
    throw Error(ExitCode::dimension, "esd distance: eigenvalue count does not match d");
  }
  const double gamma = static_cast<double>(sample.d) / static_cast<double>(sample.n);
  check_gamma(gamma);
  const MPParams p(gamma);

  constexpr std::size_t kBins = 64;
  const double hi = 1.1 * p.b_plus;
  const double width = hi / static_cast<double>(kBins);
  std::vector<std::size_t> counts(kBins, 0);
  for (double ev : sample.eigenvalues) {
    // Clamp stragglers (tiny negative rounding, rare top-edge excursions)
    // into the end bins so the observed fractions always sum to one.
    std::size_t idx = 0;
    if (ev > 0.0) {
      idx = std::min(static_cast<std::size_t>(ev / width), kBins - 1);
    }
    ++counts[idx];
  }

  double dist = 0.0;
  const double inv_d = 1.0 / static_cast<double>(sample.d);
  for (std::size_t b = 0; b < kBins; ++b) {
    const double lo_edge = width * static_cast<double>(b);
    const double hi_edge = (b + 1 == kBins) ? hi : width * static_cast<double>(b + 1);
    const double expected = mp_mass_in(lo_edge, hi_edge, gamma);
    const double observed = static_cast<double>(counts[b]) * inv_d;
    dist += std::abs(observed - expected);
  }
  return dist;
}

Vector df_projection_experiment(std::size_t n, std::size_t d, std::size_t m_directions,
                                std::uint64_t seed,
                                const std::function<double(Rng&)>& marginal) {
  if (n < 2 || d < 1 || m_directions < 1) {
    throw Error(ExitCode::dimension,
                "projection experiment requires n >= 2, d >= 1 and at least one direction");
  }
  if (static_cast<double>(n) * static_cast<double>(d) > 1e8) {
    throw Error(ExitCode::dimension, "projection experiment: n*d exceeds the 1e8 size guard");
  }
  const double sqrt3 = std::sqrt(3.0);
  const auto draw = marginal ? marginal
                             : std::function<double(Rng&)>(
                                   [sqrt3](Rng& r) { return r.uniform(-sqrt3, sqrt3); });

  Rng data_rng(derive_seed(seed, stream::data, 0));
  Matrix x(n, d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = x.row(i);
    for (std::size_t j = 0; j < d; ++j) row[j] = draw(data_rng);
  }

  Vector ks(m_directions, 0.0);
  Vector z(n);
  for (std::size_t m = 0; m < m_directions; ++m) {
    Rng dir_rng(derive_seed(seed, stream::direction, m));
    const Vector a = random_unit_vector(d, dir_rng);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = x.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += row[j] * a[j];
      z[i] = s;
    }
    // Standardize with the sample mean and sd (n-1).
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : z) {
      const double t = v - mean;
      ss += t * t;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw Error(ExitCode::dimension, "projection experiment: degenerate projection");
    }
    Vector standardized(n);
    for (std::size_t i = 0; i < n; ++i) standardized[i] = (z[i] - mean) / sd;
    ks[m] = info::ks_to_standard_normal(standardized);
  }
  return ks;
}

double median(Vector values) {
  if (values.empty()) {
    throw Error(ExitCode::dimension, "median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace ppursuit::spectra
