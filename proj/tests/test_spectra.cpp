#include <cmath>

#include "doctest.h"
#include "ppursuit/spectra.hpp"
#include "testutil.hpp"

using namespace ppursuit;
using namespace testutil;

TEST_SUITE("spectra") {

TEST_CASE("MP support endpoints") {
  const spectra::MPParams p(0.25);
  CHECK(p.b_minus == doctest::Approx(0.25));
  CHECK(p.b_plus == doctest::Approx(2.25));

  const spectra::MPParams q(0.7);
  CHECK(std::abs(q.b_minus - std::pow(1.0 - std::sqrt(0.7), 2)) < 1e-12);
  CHECK(std::abs(q.b_plus - std::pow(1.0 + std::sqrt(0.7), 2)) < 1e-12);
  CHECK(q.b_minus <= q.b_plus);

  check_error([] { spectra::MPParams bad(0.0); }, ExitCode::dimension, "positive");
}

TEST_CASE("mp_density worked values") {
  CHECK(spectra::mp_density(1.0, 1.0) == doctest::Approx(std::sqrt(3.0) / (2.0 * 3.14159265358979323846)));
  CHECK(spectra::mp_density(5.0, 1.0) == 0.0);

  // gamma = 0.25: support [0.25, 2.25], zero outside, positive inside.
  CHECK(spectra::mp_density(0.2, 0.25) == 0.0);
  CHECK(spectra::mp_density(0.25, 0.25) == 0.0);
  CHECK(spectra::mp_density(1.0, 0.25) > 0.0);
  CHECK(spectra::mp_density(2.25, 0.25) == 0.0);
  CHECK(spectra::mp_density(2.3, 0.25) == 0.0);
}

TEST_CASE("mp_density rejects gamma outside (0, 1]") {
  check_error([] { spectra::mp_density(1.0, 0.0); }, ExitCode::dimension, "(0, 1]");
  check_error([] { spectra::mp_density(1.0, -0.3); }, ExitCode::dimension, "(0, 1]");
  check_error([] { spectra::mp_density(1.0, 1.5); }, ExitCode::dimension, "point mass");
}

TEST_CASE("mp_total_mass is 1 across gammas") {
  for (double gamma : {0.5, 1.0, 0.1}) {
    CHECK(std::abs(spectra::mp_total_mass(gamma) - 1.0) < 1e-6);
  }
}

TEST_CASE("mp_mass_in is additive and clipped to the support") {
  const double gamma = 0.5;
  const spectra::MPParams p(gamma);
  const double mid = 0.5 * (p.b_minus + p.b_plus);
  const double left = spectra::mp_mass_in(p.b_minus, mid, gamma);
  const double right = spectra::mp_mass_in(mid, p.b_plus, gamma);
  CHECK(std::abs(left + right - 1.0) < 1e-9);
  CHECK(spectra::mp_mass_in(-5.0, p.b_minus, gamma) == doctest::Approx(0.0));
  CHECK(spectra::mp_mass_in(p.b_plus, p.b_plus + 10.0, gamma) == doctest::Approx(0.0));
  CHECK(std::abs(spectra::mp_mass_in(-100.0, 100.0, gamma) - 1.0) < 1e-9);
  CHECK(spectra::mp_mass_in(mid, mid, gamma) == doctest::Approx(0.0));
}

TEST_CASE("wishart d = 1 eigenvalue concentrates at 1") {
  const std::size_t n = 10000;
  const auto s = spectra::simulate_wishart_esd(n, 1, 0);
  REQUIRE(s.eigenvalues.size() == 1);
  CHECK(std::abs(s.eigenvalues[0] - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("wishart sample is sorted, nonnegative, and deterministic") {
  const auto s = spectra::simulate_wishart_esd(100, 30, 5);
  REQUIRE(s.eigenvalues.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(s.eigenvalues[i] >= -1e-10);
    if (i > 0) CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
  }
  const auto again = spectra::simulate_wishart_esd(100, 30, 5);
  CHECK(s.eigenvalues == again.eigenvalues);
  const auto other = spectra::simulate_wishart_esd(100, 30, 6);
  CHECK_FALSE(s.eigenvalues == other.eigenvalues);
}

TEST_CASE("wishart guards") {
  check_error([] { spectra::simulate_wishart_esd(10, 20, 0); }, ExitCode::dimension, "n >= d");
  check_error([] { spectra::simulate_wishart_esd(100000, 2000, 0); }, ExitCode::dimension,
              "size guard");
}

TEST_CASE("esd matches MP closely at n = 2000, d = 1000") {
  const auto s = spectra::simulate_wishart_esd(2000, 1000, 0);
  CHECK(spectra::esd_vs_mp_distance(s) < 0.05);
}

TEST_CASE("esd distance shrinks as the matrix grows") {
  // At (200, 100) the 64-bin histogram of 100 eigenvalues quantizes hard; the
  // distance sits near 0.3 no matter how good the simulation is.
  const auto small = spectra::simulate_wishart_esd(200, 100, 1);
  const double small_dist = spectra::esd_vs_mp_distance(small);
  CHECK(small_dist < 0.45);

  const auto big = spectra::simulate_wishart_esd(2000, 1000, 1);
  CHECK(spectra::esd_vs_mp_distance(big) < small_dist);
}

TEST_CASE("df projections look Gaussian in high dimension only") {
  const Vector high = spectra::df_projection_experiment(1000, 500, 100, 0);
  REQUIRE(high.size() == 100);
  const double med_high = spectra::median(high);
  CHECK(med_high < 0.05);

  const Vector low = spectra::df_projection_experiment(1000, 10, 100, 0);
  CHECK(spectra::median(low) > med_high);

  // d = 1: the "projection" is the standardized uniform marginal itself, a
  // fixed distance from the normal (sup gap 0.0572 at the tails).
  const Vector flat = spectra::df_projection_experiment(5000, 1, 50, 0);
  CHECK(spectra::median(flat) > 0.05);
}

TEST_CASE("df experiment is deterministic and honors a custom marginal") {
  const Vector a = spectra::df_projection_experiment(500, 100, 20, 3);
  const Vector b = spectra::df_projection_experiment(500, 100, 20, 3);
  CHECK(a == b);

  const auto rademacher = [](Rng& rng) { return rng.uniform01() < 0.5 ? -1.0 : 1.0; };
  const Vector c = spectra::df_projection_experiment(500, 100, 20, 3, rademacher);
  CHECK_FALSE(a == c);
  CHECK(spectra::median(c) < 0.1);
}

TEST_CASE("median of small samples") {
  CHECK(spectra::median({1.0}) == 1.0);
  CHECK(spectra::median({2.0, 1.0}) == doctest::Approx(1.5));
  CHECK(spectra::median({3.0, 1.0, 2.0}) == 2.0);
  check_error([] { spectra::median({}); }, ExitCode::dimension, "empty");
}

}  // TEST_SUITE
