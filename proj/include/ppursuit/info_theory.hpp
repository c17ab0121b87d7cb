#pragma once

#include <cstdint>
#include <span>

#include "ppursuit/matrix.hpp"

namespace ppursuit::info {

// Equal-width histogram over [min, max] of the sample; the top edge is closed
// so the maximum lands in the last bin.
struct Histogram {
  Vector bin_edges;                  // size bins + 1, strictly increasing
  std::vector<std::uint64_t> counts; // size bins
  std::uint64_t total = 0;           // sum of counts == sample size

  static Histogram build(std::span<const double> samples, std::size_t bins);
};

// Throws unless p is entrywise >= 0 and sums to 1 within 1e-12.
void validate_distribution(std::span<const double> p);

// Shannon entropy in nats; 0 log 0 = 0. Result lies in [0, log k].
double discrete_entropy(std::span<const double> p);

// KL(p || q) in nats; returns +infinity when some p_i > 0 has q_i == 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

// Histogram plug-in estimate of differential entropy (nats):
// -sum p_hat log p_hat + log(bin width). bins == 0 picks ceil(sqrt(n)),
// capped at 512. Requires n >= 2 and a non-degenerate sample.
double differential_entropy_hist(std::span<const double> samples, std::size_t bins = 0);

// Probabilists' Hermite polynomial He_n(x), by the three-term recurrence.
// n is capped at 20; the values blow up fast beyond that.
double hermite(unsigned n, double x);

// Gaussian-weighted inner product of He_n and He_m by quadrature; equals
// n! when n == m and ~0 otherwise. Requires n, m <= 10.
double hermite_orthogonality(unsigned n, unsigned m);

// Plug-in mutual information (nats) of the joint histogram on a bins x bins
// grid. Nonnegative up to estimation error; 0 for independent samples.
double mutual_information_binned(std::span<const double> x, std::span<const double> y,
                                 std::size_t bins);

// Standard normal CDF.
double standard_normal_cdf(double x);

// Kolmogorov-Smirnov statistic between the sample's empirical CDF and the
// standard normal CDF (exact sup over both one-sided gaps at each point).
double ks_to_standard_normal(std::span<const double> samples);

}  // namespace ppursuit::info
