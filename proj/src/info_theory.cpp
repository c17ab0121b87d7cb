#include "ppursuit/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppursuit/error.hpp"
#include "ppursuit/quadrature.hpp"

namespace ppursuit::info {

namespace {

void require_finite_samples(std::span<const double> s, const char* who) {
  for (double v : s) {
    if (!std::isfinite(v)) {
      throw Error(ExitCode::dimension, std::string(who) + ": sample contains a non-finite value");
    }
  }
}

std::size_t bin_of(double v, double lo, double width, std::size_t bins) {
  const auto idx = static_cast<std::size_t>((v - lo) / width);
  return std::min(idx, bins - 1);
}

}  // namespace

Histogram Histogram::build(std::span<const double> samples, std::size_t bins) {
  if (samples.empty()) {
    throw Error(ExitCode::dimension, "histogram: sample is empty");
  }
  if (bins == 0) {
    throw Error(ExitCode::dimension, "histogram: bin count must be positive");
  }
  require_finite_samples(samples, "histogram");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) {
    throw Error(ExitCode::dimension, "histogram: sample is degenerate (all values equal)");
  }
  Histogram h;
  h.bin_edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.bin_edges[i] = lo + width * static_cast<double>(i);
  }
  h.bin_edges[bins] = hi;  // close the top edge exactly
  h.counts.assign(bins, 0);
  for (double v : samples) ++h.counts[bin_of(v, lo, width, bins)];
  h.total = samples.size();
  return h;
}

void validate_distribution(std::span<const double> p) {
  if (p.empty()) {
    throw Error(ExitCode::dimension, "probability vector is empty");
  }
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ExitCode::dimension, "probability vector has a negative or non-finite entry");
    }
    sum += v;
  }
  if (!(std::abs(sum - 1.0) <= 1e-12)) {
    throw Error(ExitCode::dimension, "probability vector does not sum to 1 (within 1e-12)");
  }
}

double discrete_entropy(std::span<const double> p) {
  validate_distribution(p);
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return std::max(0.0, h);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  validate_distribution(p);
  validate_distribution(q);
  if (p.size() != q.size()) {
    throw Error(ExitCode::dimension, "kl_divergence: distributions have different sizes");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    kl += p[i] * std::log(p[i] / q[i]);
  }
  // Gibbs: the true value is nonnegative; only rounding can push it below.
  return (kl < 0.0 && kl > -1e-12) ? 0.0 : kl;
}

double differential_entropy_hist(std::span<const double> samples, std::size_t bins) {
  if (samples.size() < 2) {
    throw Error(ExitCode::dimension, "differential entropy requires at least two samples");
  }
  if (bins == 0) {
    bins = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(samples.size()))));
    bins = std::min<std::size_t>(bins, 512);
  }
  const Histogram h = Histogram::build(samples, bins);
  const double n = static_cast<double>(h.total);
  const double width = (h.bin_edges.back() - h.bin_edges.front()) /
                       static_cast<double>(h.counts.size());
  double ent = 0.0;
  for (std::uint64_t c : h.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    ent -= p * std::log(p);
  }
  return ent + std::log(width);
}

double hermite(unsigned n, double x) {
  if (n > 20) {
    throw Error(ExitCode::dimension, "hermite: order must be at most 20");
  }
  if (!std::isfinite(x)) {
    throw Error(ExitCode::dimension, "hermite: argument must be finite");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;  // He_0
  double cur = x;     // He_1
  for (unsigned k = 1; k < n; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_orthogonality(unsigned n, unsigned m) {
  if (n > 10 || m > 10) {
    throw Error(ExitCode::dimension, "hermite_orthogonality: orders must be at most 10");
  }
  // Composite Simpson on [-12, 12] with 4096 intervals (4097 nodes). The
  // weight phi crushes the tails (phi(12) ~ 2e-32), and the grid is fine
  // enough for 1e-8 absolute / 1e-9 relative accuracy at the orders allowed.
  const double inv_sqrt_2pi = 0.3989422804014327;
  const auto f = [&](double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x) * hermite(n, x) * hermite(m, x);
  };
  return quadrature::simpson(f, -12.0, 12.0, 4096);
}

double mutual_information_binned(std::span<const double> x, std::span<const double> y,
                                 std::size_t bins) {
  if (x.size() != y.size()) {
    throw Error(ExitCode::dimension, "mutual information: samples have different lengths");
  }
  if (x.size() < 2) {
    throw Error(ExitCode::dimension, "mutual information requires at least two samples");
  }
  if (bins == 0) {
    throw Error(ExitCode::dimension, "mutual information: bin count must be positive");
  }
  const Histogram hx = Histogram::build(x, bins);
  const Histogram hy = Histogram::build(y, bins);
  const double wx = (hx.bin_edges.back() - hx.bin_edges.front()) / static_cast<double>(bins);
  const double wy = (hy.bin_edges.back() - hy.bin_edges.front()) / static_cast<double>(bins);
  std::vector<std::uint64_t> joint(bins * bins, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t bx = bin_of(x[i], hx.bin_edges.front(), wx, bins);
    const std::size_t by = bin_of(y[i], hy.bin_edges.front(), wy, bins);
    ++joint[bx * bins + by];
  }
  const double n = static_cast<double>(x.size());
  double mi = 0.0;
  for (std::size_t bx = 0; bx < bins; ++bx) {
    const double px = static_cast<double>(hx.counts[bx]) / n;
    if (px == 0.0) continue;
    for (std::size_t by = 0; by < bins; ++by) {
      const std::uint64_t c = joint[bx * bins + by];
      if (c == 0) continue;
      const double pxy = static_cast<double>(c) / n;
      const double py = static_cast<double>(hy.counts[by]) / n;
      mi += pxy * std::log(pxy / (px * py));
    }
  }
  return std::max(0.0, mi);
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_to_standard_normal(std::span<const double> samples) {
  if (samples.size() < 10) {
    throw Error(ExitCode::dimension, "ks statistic requires at least 10 samples");
  }
  require_finite_samples(samples, "ks statistic");
  Vector sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = standard_normal_cdf(sorted[i]);
    const double upper = static_cast<double>(i + 1) / n - cdf;
    const double lower = cdf - static_cast<double>(i) / n;
    d = std::max(d, std::max(upper, lower));
  }
  return d;
}

}  // namespace ppursuit::info
