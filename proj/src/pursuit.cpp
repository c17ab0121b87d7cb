#include "ppursuit/pursuit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "ppursuit/error.hpp"
#include "ppursuit/linalg.hpp"
#include "ppursuit/random.hpp"

namespace ppursuit::pursuit {

namespace {

void validate_config(const PursuitConfig& cfg) {
  if (cfg.restarts < 1) {
    throw Error(ExitCode::dimension, "pursuit: restarts must be at least 1");
  }
  if (cfg.max_iters < 1) {
    throw Error(ExitCode::dimension, "pursuit: max_iters must be at least 1");
  }
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    throw Error(ExitCode::dimension, "pursuit: tol must be positive");
  }
  if (!(cfg.step_init > 0.0) || !std::isfinite(cfg.step_init)) {
    throw Error(ExitCode::dimension, "pursuit: step_init must be positive");
  }
}

// Removes the components of v along each (orthonormal) constraint direction.
void project_out(Vector& v, const std::vector<Vector>& constraints) {
  for (const Vector& c : constraints) {
    const double p = dot(v, c);
    axpy(v, -p, c);
  }
}

Vector gradient_at(const indexes::ProjectionIndex& index, const Matrix& x, const Vector& a,
                   GradientMode mode) {
  if (mode == GradientMode::analytic) {
    indexes::IndexValue iv = index.evaluate(a, x, true);
    if (!iv.gradient) {
      throw Error(ExitCode::optimizer,
                  std::string("index '") + std::string(index.name()) +
                      "' does not provide a gradient; use finite differences");
    }
    return std::move(*iv.gradient);
  }
  // Central differences, h scaled per coordinate.
  Vector g(a.size());
  Vector probe = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(a[i]));
    const double saved = probe[i];
    probe[i] = saved + h;
    const double fp = index.evaluate(probe, x, false).value;
    probe[i] = saved - h;
    const double fm = index.evaluate(probe, x, false).value;
    probe[i] = saved;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

RestartTrace run_restart(const Matrix& x, const indexes::ProjectionIndex& index,
                         const std::vector<Vector>& constraints, const PursuitConfig& cfg,
                         std::uint64_t restart_seed) {
  const std::size_t d = x.cols();
  Rng rng(restart_seed);

  RestartTrace trace;

  // Random unit start in the feasible subspace.
  Vector a;
  for (int attempt = 0;; ++attempt) {
    a = random_unit_vector(d, rng);
    project_out(a, constraints);
    const double n = norm2(a);
    if (n > 1e-8) {
      scale(a, 1.0 / n);
      break;
    }
    if (attempt >= 100) {
      throw Error(ExitCode::dimension,
                  "pursuit: constraints leave no feasible direction (k may exceed the rank)");
    }
  }

  double f = index.evaluate(a, x, false).value;
  trace.points.push_back({0, f, 0.0});

  double last_step = cfg.step_init;
  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    Vector g = gradient_at(index, x, a, cfg.gradient_mode);
    project_out(g, constraints);
    // Tangential component only: moving along a itself just rescales.
    axpy(g, -dot(g, a), a);
    const double gnorm2 = dot(g, g);
    if (!(gnorm2 > 0.0) || !std::isfinite(gnorm2)) break;

    // Backtracking line search (Armijo, halving); the first trial doubles the
    // last accepted step so the scheme adapts to badly scaled objectives.
    double step = std::min(2.0 * last_step, 1e9);
    bool accepted = false;
    Vector candidate;
    double f_candidate = 0.0;
    while (step >= 1e-18) {
      candidate = a;
      axpy(candidate, step, g);
      project_out(candidate, constraints);
      const double n = norm2(candidate);
      if (n > 1e-12) {
        scale(candidate, 1.0 / n);
        f_candidate = index.evaluate(candidate, x, false).value;
        if (std::isfinite(f_candidate) && f_candidate >= f + 1e-4 * step * gnorm2) {
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no ascent step found: treat as converged

    // An Armijo-acceptable step can still overshoot a nearby maximum and merely
    // reflect the iterate across it, which stalls progress at a fixed step
    // size. Keep halving past the accepted step while that strictly improves
    // the value, and take the best candidate seen.
    while (0.5 * step >= 1e-18) {
      Vector refined = a;
      axpy(refined, 0.5 * step, g);
      project_out(refined, constraints);
      const double n = norm2(refined);
      if (n <= 1e-12) break;
      scale(refined, 1.0 / n);
      const double f_refined = index.evaluate(refined, x, false).value;
      if (!std::isfinite(f_refined) || f_refined <= f_candidate) break;
      candidate = std::move(refined);
      f_candidate = f_refined;
      step *= 0.5;
    }

    double displacement = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double t = candidate[i] - a[i];
      displacement += t * t;
    }
    a = std::move(candidate);
    f = f_candidate;
    last_step = step;
    trace.points.push_back({iter, f, step});
    if (std::sqrt(displacement) < cfg.tol) break;
  }

  // Final polish: re-project and renormalize so invariants hold exactly-ish.
  project_out(a, constraints);
  trace.direction = normalized(std::move(a));
  trace.value = f;
  return trace;
}

}  // namespace

DirectionSearch pursue_one(const Matrix& x, const indexes::ProjectionIndex& index,
                           const std::vector<Vector>& orthogonal_to, const PursuitConfig& cfg) {
  validate_config(cfg);
  if (x.rows() < 1 || x.cols() < 1) {
    throw Error(ExitCode::dimension, "pursuit: data matrix is empty");
  }
  require_finite(x, "pursuit data");
  const std::size_t d = x.cols();
  if (cfg.gradient_mode == GradientMode::finite_difference && d > 200) {
    std::cerr << "warning: finite-difference gradients need 2*" << d
              << " index evaluations per iteration; this will be slow\n";
  }
  for (const Vector& c : orthogonal_to) {
    if (c.size() != d) {
      throw Error(ExitCode::dimension, "pursuit: constraint dimension does not match the data");
    }
    if (std::abs(norm2(c) - 1.0) > 1e-8) {
      throw Error(ExitCode::dimension, "pursuit: constraint directions must be unit vectors");
    }
  }
  if (orthogonal_to.size() >= d) {
    throw Error(ExitCode::dimension, "pursuit: constraints span the whole space");
  }

  DirectionSearch out;
  out.restarts.reserve(cfg.restarts);
  std::size_t n_failed = 0;
  std::string first_error;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    RestartTrace trace;
    try {
      trace = run_restart(x, index, orthogonal_to, cfg, derive_seed(cfg.seed, stream::restart, r));
    } catch (const std::exception& e) {
      trace.failed = true;
      trace.error = "restart " + std::to_string(r) + ": " + e.what();
      if (first_error.empty()) first_error = trace.error;
      ++n_failed;
    }
    out.restarts.push_back(std::move(trace));
  }
  if (n_failed == cfg.restarts) {
    throw Error(ExitCode::optimizer,
                "pursuit: all " + std::to_string(cfg.restarts) + " restarts failed (" +
                    first_error + ")");
  }

  // Winner: highest value; exact ties go to the lowest restart index.
  std::size_t best = cfg.restarts;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    if (out.restarts[r].failed) continue;
    if (best == cfg.restarts || out.restarts[r].value > out.restarts[best].value) {
      best = r;
    }
  }
  out.chosen_restart = best;
  out.direction = out.restarts[best].direction;
  out.value = out.restarts[best].value;
  return out;
}

PursuitResult pursue_k(const Matrix& x, const indexes::ProjectionIndex& index, std::size_t k,
                       const PursuitConfig& cfg) {
  if (k < 1 || k > x.cols()) {
    throw Error(ExitCode::dimension,
                "pursuit: k must satisfy 1 <= k <= " + std::to_string(x.cols()) + " (got " +
                    std::to_string(k) + ")");
  }
  PursuitResult result;
  result.directions = Matrix(k, x.cols(), 0.0);
  std::vector<Vector> found;
  found.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    PursuitConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, stream::direction, j);
    DirectionSearch ds = pursue_one(x, index, found, sub);
    for (std::size_t c = 0; c < x.cols(); ++c) result.directions(j, c) = ds.direction[c];
    result.values.push_back(ds.value);
    result.chosen_restarts.push_back(ds.chosen_restart);
    result.traces.push_back(std::move(ds.restarts));
    found.push_back(std::move(ds.direction));
  }
  return result;
}

PcaResult pca(const Matrix& x, std::size_t k) {
  if (k < 1 || k > x.cols()) {
    throw Error(ExitCode::dimension,
                "pca: k must satisfy 1 <= k <= " + std::to_string(x.cols()) + " (got " +
                    std::to_string(k) + ")");
  }
  const Matrix c = linalg::covariance(x);
  const linalg::SymEigen eig = linalg::sym_eigen(c);
  PcaResult out;
  out.components = Matrix(k, x.cols(), 0.0);
  out.explained_variances.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    out.explained_variances[j] = eig.eigenvalues[j];
    for (std::size_t i = 0; i < x.cols(); ++i) {
      out.components(j, i) = eig.eigenvectors(i, j);
    }
  }
  return out;
}

Matrix embed(const Matrix& x, const Matrix& directions) {
  if (directions.cols() != x.cols()) {
    throw Error(ExitCode::dimension, "embed: direction dimension does not match the data");
  }
  Matrix z(x.rows(), directions.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* xi = x.row(i);
    double* zi = z.row(i);
    for (std::size_t j = 0; j < directions.rows(); ++j) {
      const double* dj = directions.row(j);
      double s = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) s += xi[c] * dj[c];
      zi[j] = s;
    }
  }
  return z;
}

}  // namespace ppursuit::pursuit
