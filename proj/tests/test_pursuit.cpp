#include <cmath>

#include "doctest.h"
#include "ppursuit/linalg.hpp"
#include "ppursuit/pursuit.hpp"
#include "ppursuit/random.hpp"
#include "ppursuit/synth.hpp"
#include "testutil.hpp"

using namespace ppursuit;
using namespace testutil;

namespace {

// Four points whose sample covariance is exactly diag(3, 1).
Matrix cov_diag31_data() {
  const double a = std::sqrt(4.5), b = std::sqrt(1.5);
  return make_matrix({{a, 0}, {0, b}, {-a, 0}, {0, -b}});
}

// An index that always throws, to exercise the all-restarts-failed path.
class BrokenIndex final : public indexes::ProjectionIndex {
 public:
  std::string_view name() const override { return "broken"; }
  indexes::IndexValue evaluate(const Vector&, const Matrix&, bool) const override {
    throw Error(ExitCode::dimension, "deliberately broken");
  }
};

bool traces_identical(const pursuit::PursuitResult& a, const pursuit::PursuitResult& b) {
  if (!(a.directions == b.directions) || a.values != b.values ||
      a.chosen_restarts != b.chosen_restarts) {
    return false;
  }
  if (a.traces.size() != b.traces.size()) return false;
  for (std::size_t j = 0; j < a.traces.size(); ++j) {
    if (a.traces[j].size() != b.traces[j].size()) return false;
    for (std::size_t r = 0; r < a.traces[j].size(); ++r) {
      const auto& ta = a.traces[j][r];
      const auto& tb = b.traces[j][r];
      if (ta.value != tb.value || ta.direction != tb.direction ||
          ta.points.size() != tb.points.size()) {
        return false;
      }
      for (std::size_t p = 0; p < ta.points.size(); ++p) {
        if (ta.points[p].value != tb.points[p].value || ta.points[p].step != tb.points[p].step) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("pursuit") {

TEST_CASE("pursue_one finds the mean direction") {
  const Matrix x = make_matrix({{2, 4}, {4, 4}, {3, 3}, {3, 5}});  // mean (3, 4)
  pursuit::PursuitConfig cfg;
  cfg.seed = 1;
  const auto res = pursuit::pursue_one(x, indexes::MeanIndex{}, {}, cfg);
  CHECK(line_angle(res.direction, {0.6, 0.8}) < 1e-4);
  // The maximum is +5, not -5, so the sign must be right too.
  CHECK(res.value == doctest::Approx(5.0));
  CHECK(dot(res.direction, {0.6, 0.8}) > 0.0);
}

TEST_CASE("pursue_one finds the top variance axis") {
  const Matrix x = cov_diag31_data();
  pursuit::PursuitConfig cfg;
  cfg.seed = 2;
  const auto res = pursuit::pursue_one(x, indexes::VarianceIndex{}, {}, cfg);
  CHECK(line_angle(res.direction, {1, 0}) < 1e-3);
  CHECK(res.value == doctest::Approx(3.0));
}

TEST_CASE("pursue_one respects orthogonality constraints") {
  const Matrix x = cov_diag31_data();
  pursuit::PursuitConfig cfg;
  cfg.seed = 3;
  const auto res = pursuit::pursue_one(x, indexes::VarianceIndex{}, {{1.0, 0.0}}, cfg);
  CHECK(line_angle(res.direction, {0, 1}) < 1e-3);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(std::abs(res.direction[0]) < 1e-8);
}

TEST_CASE("pursue_one validates its config and constraints") {
  const Matrix x = cov_diag31_data();
  indexes::VarianceIndex var;
  pursuit::PursuitConfig cfg;

  pursuit::PursuitConfig bad = cfg;
  bad.restarts = 0;
  check_error([&] { pursuit::pursue_one(x, var, {}, bad); }, ExitCode::dimension, "restarts");

  bad = cfg;
  bad.tol = 0.0;
  check_error([&] { pursuit::pursue_one(x, var, {}, bad); }, ExitCode::dimension, "tol");

  check_error([&] { pursuit::pursue_one(x, var, {{0.5, 0.0}}, cfg); }, ExitCode::dimension,
              "unit");
  check_error([&] { pursuit::pursue_one(x, var, {{1.0, 0.0}, {0.0, 1.0}}, cfg); },
              ExitCode::dimension, "span");
}

TEST_CASE("pursue_one reports failure only when every restart fails") {
  const Matrix x = cov_diag31_data();
  pursuit::PursuitConfig cfg;
  cfg.restarts = 3;
  bool threw = false;
  try {
    pursuit::pursue_one(x, BrokenIndex{}, {}, cfg);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == ExitCode::optimizer);
    CHECK(std::string(e.what()).find("restart 0") != std::string::npos);
    CHECK(std::string(e.what()).find("deliberately broken") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("finite-difference mode agrees with analytic gradients") {
  const Matrix x = make_matrix({{2, 4}, {4, 4}, {3, 3}, {3, 5}});
  pursuit::PursuitConfig cfg;
  cfg.seed = 4;
  auto fd_cfg = cfg;
  fd_cfg.gradient_mode = pursuit::GradientMode::finite_difference;
  const auto an = pursuit::pursue_one(x, indexes::MeanIndex{}, {}, cfg);
  const auto fd = pursuit::pursue_one(x, indexes::MeanIndex{}, {}, fd_cfg);
  CHECK(line_angle(an.direction, fd.direction) < 1e-6);
  CHECK(std::abs(an.value - fd.value) < 1e-10);
}

TEST_CASE("traces are monotone and the winner dominates all restarts") {
  const Matrix x = gaussian_rows(400, {2.0, 1.0, 0.5}, 70);
  pursuit::PursuitConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 8;
  const auto res = pursuit::pursue_one(x, indexes::VarianceIndex{}, {}, cfg);
  REQUIRE(res.restarts.size() == 8);
  for (const auto& trace : res.restarts) {
    REQUIRE_FALSE(trace.failed);
    REQUIRE(!trace.points.empty());
    for (std::size_t p = 1; p < trace.points.size(); ++p) {
      CHECK(trace.points[p].value >= trace.points[p - 1].value - 1e-12);
    }
    // Winner beats (or ties) every restart's final and initial values.
    CHECK(res.value >= trace.value - 1e-12);
    CHECK(res.value >= trace.points.front().value - 1e-12);
  }
  CHECK(res.restarts[res.chosen_restart].value == res.value);
}

TEST_CASE("pursue_k matches PCA on a known spectrum") {
  const Matrix x = cov_diag31_data();
  pursuit::PursuitConfig cfg;
  cfg.seed = 6;
  const auto res = pursuit::pursue_k(x, indexes::VarianceIndex{}, 2, cfg);
  REQUIRE(res.values.size() == 2);
  CHECK(line_angle(matrix_row(res.directions, 0), {1, 0}) < 1e-3);
  CHECK(line_angle(matrix_row(res.directions, 1), {0, 1}) < 1e-3);
  CHECK(res.values[0] == doctest::Approx(3.0));
  CHECK(res.values[1] == doctest::Approx(1.0));
}

TEST_CASE("pursue_k directions form an orthonormal basis at k = d") {
  const Matrix raw = gaussian_rows(300, {1.0, 2.0, 0.7, 1.4}, 71);
  const auto w = linalg::whiten(raw);
  pursuit::PursuitConfig cfg;
  cfg.seed = 7;
  cfg.restarts = 4;
  const auto res = pursuit::pursue_k(w.data, indexes::CumulantIndex{}, 4, cfg);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = dot(matrix_row(res.directions, i), matrix_row(res.directions, j));
      CHECK(std::abs(d - (i == j ? 1.0 : 0.0)) < 1e-8);
    }
  }
}

TEST_CASE("pursue_k rejects out-of-range k") {
  const Matrix x = cov_diag31_data();
  check_error([&] { pursuit::pursue_k(x, indexes::VarianceIndex{}, 3, {}); },
              ExitCode::dimension, "k must satisfy");
  check_error([&] { pursuit::pursue_k(x, indexes::VarianceIndex{}, 0, {}); },
              ExitCode::dimension, "k must satisfy");
}

TEST_CASE("pursuit is bit-deterministic for a fixed seed") {
  const Matrix x = gaussian_rows(200, {1.0, 3.0, 0.4}, 72);
  pursuit::PursuitConfig cfg;
  cfg.seed = 8;
  cfg.restarts = 6;
  const auto a = pursuit::pursue_k(x, indexes::VarianceIndex{}, 2, cfg);
  const auto b = pursuit::pursue_k(x, indexes::VarianceIndex{}, 2, cfg);
  CHECK(traces_identical(a, b));

  // Direction substreams are independent: direction 0 is unchanged by k.
  const auto just_one = pursuit::pursue_k(x, indexes::VarianceIndex{}, 1, cfg);
  CHECK(matrix_row(a.directions, 0) == matrix_row(just_one.directions, 0));
  CHECK(a.values[0] == just_one.values[0]);
}

TEST_CASE("logcosh pursuit recovers the planted mixture direction") {
  // Balanced mixture of N(-4u, I) and N(+4u, I) in d = 10.
  const std::size_t n = 1000, d = 10;
  Rng rng(derive_seed(73, stream::data));
  const Matrix rot = random_rotation(d, rng);
  Vector u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = rot(i, 0);

  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double side = (i % 2 == 0) ? 4.0 : -4.0;
    for (std::size_t j = 0; j < d; ++j) x(i, j) = side * u[j] + rng.normal();
  }

  const auto w = linalg::whiten(x);
  pursuit::PursuitConfig cfg;
  cfg.seed = 9;
  const auto res = pursuit::pursue_k(w.data, indexes::LogCoshIndex{1.0}, 1, cfg);
  // Whitening preserves the u direction here (the covariance is I + c uu^T),
  // so the found direction can be compared to u without pulling back.
  CHECK(std::abs(dot(matrix_row(res.directions, 0), u)) > 0.95);
}

TEST_CASE("pca worked examples") {
  // Six points with sample covariance exactly diag(5, 2, 1).
  const double a = std::sqrt(12.5), b = std::sqrt(5.0), c = std::sqrt(2.5);
  const Matrix x = make_matrix(
      {{a, 0, 0}, {-a, 0, 0}, {0, b, 0}, {0, -b, 0}, {0, 0, c}, {0, 0, -c}});
  const auto res = pursuit::pca(x, 2);
  REQUIRE(res.explained_variances.size() == 2);
  CHECK(res.explained_variances[0] == doctest::Approx(5.0));
  CHECK(res.explained_variances[1] == doctest::Approx(2.0));
  CHECK(line_angle(matrix_row(res.components, 0), {1, 0, 0}) < 1e-10);
  CHECK(line_angle(matrix_row(res.components, 1), {0, 1, 0}) < 1e-10);

  const auto full = pursuit::pca(x, 3);
  const Matrix cov = linalg::covariance(x);
  double trace = 0.0, total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    trace += cov(i, i);
    total += full.explained_variances[i];
  }
  CHECK(std::abs(trace - total) < 1e-8);
}

TEST_CASE("pca on isotropic data has equal explained variances") {
  const Matrix x = make_matrix({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const auto res = pursuit::pca(x, 2);
  CHECK(res.explained_variances[0] == doctest::Approx(2.0 / 3.0));
  CHECK(res.explained_variances[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("pca rejects out-of-range k") {
  const Matrix x = cov_diag31_data();
  check_error([&] { pursuit::pca(x, 3); }, ExitCode::dimension, "k must satisfy");
}

TEST_CASE("pca agrees with variance-index pursuit") {
  const Matrix x = gaussian_rows(500, {3.0, 1.5, 0.5}, 74);
  const Matrix centered = linalg::centered(x);
  const auto p = pursuit::pca(centered, 3);
  pursuit::PursuitConfig cfg;
  cfg.seed = 10;
  const auto res = pursuit::pursue_k(centered, indexes::VarianceIndex{}, 3, cfg);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(line_angle(matrix_row(p.components, j), matrix_row(res.directions, j)) < 1e-3);
    CHECK(std::abs(res.values[j] - p.explained_variances[j]) <
          1e-6 * std::abs(p.explained_variances[j]));
  }
}

TEST_CASE("embed is projection onto the direction rows") {
  const Matrix x = make_matrix({{1, 2, 3}, {4, 5, 6}});
  const Matrix z = pursuit::embed(x, Matrix::identity(3));
  CHECK(max_abs_diff(z, x) == 0.0);

  Matrix e1(1, 3, 0.0);
  e1(0, 0) = 1.0;
  const Matrix first = pursuit::embed(x, e1);
  CHECK(first(0, 0) == 1.0);
  CHECK(first(1, 0) == 4.0);

  // Orthonormal rows contract row norms.
  const auto p = pursuit::pca(gaussian_rows(50, {1.0, 1.0, 1.0}, 75), 2);
  const Matrix y = gaussian_rows(20, {1.0, 2.0, 0.5}, 76);
  const Matrix proj = pursuit::embed(y, p.components);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(norm2(matrix_row(proj, i)) <= norm2(matrix_row(y, i)) + 1e-12);
  }

  check_error([&] { pursuit::embed(x, Matrix::identity(2)); }, ExitCode::dimension, "match");
}

}  // TEST_SUITE

TEST_SUITE("synth") {

TEST_CASE("two-cluster generator shape and labels") {
  synth::TwoClusterConfig cfg;
  cfg.n = 200;
  cfg.dim = 6;
  cfg.seed = 1;
  const auto data = synth::make_two_clusters(cfg);
  CHECK(data.data.rows() == 200);
  CHECK(data.data.cols() == 6);
  REQUIRE(data.labels.size() == 200);
  int ones = 0;
  for (int l : data.labels) {
    CHECK((l == 0 || l == 1));
    ones += l;
  }
  CHECK(ones == 100);  // balanced
  CHECK(norm2(data.separation_direction) == doctest::Approx(1.0));
}

TEST_CASE("two-cluster generator separates along u and is loud along an orthogonal axis") {
  synth::TwoClusterConfig cfg;
  cfg.seed = 2;
  const auto data = synth::make_two_clusters(cfg);

  // Projection onto u splits by label with gap ~= separation.
  double m0 = 0.0, m1 = 0.0;
  int n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < data.data.rows(); ++i) {
    const double p = dot(matrix_row(data.data, i), data.separation_direction);
    if (data.labels[i] == 0) {
      m0 += p;
      ++n0;
    } else {
      m1 += p;
      ++n1;
    }
  }
  m0 /= n0;
  m1 /= n1;
  CHECK(std::abs(std::abs(m0 - m1) - cfg.separation) < 0.5);

  // The top PCA axis is the orthogonal spread axis, not u.
  const auto p = pursuit::pca(data.data, 1);
  CHECK(std::abs(dot(matrix_row(p.components, 0), data.separation_direction)) < 0.2);
  CHECK(p.explained_variances[0] > 50.0);  // spread^2 = 100 up to sampling
}

TEST_CASE("two-cluster generator is deterministic and validates its config") {
  synth::TwoClusterConfig cfg;
  cfg.n = 50;
  cfg.dim = 4;
  cfg.seed = 3;
  const auto a = synth::make_two_clusters(cfg);
  const auto b = synth::make_two_clusters(cfg);
  CHECK(a.data == b.data);
  CHECK(a.labels == b.labels);

  synth::TwoClusterConfig bad = cfg;
  bad.dim = 1;
  check_error([&] { synth::make_two_clusters(bad); }, ExitCode::dimension, "dim");
  bad = cfg;
  bad.separation = -1.0;
  check_error([&] { synth::make_two_clusters(bad); }, ExitCode::dimension, "separation");
}

}  // TEST_SUITE
