#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppursuit/indexes.hpp"
#include "ppursuit/matrix.hpp"

namespace ppursuit::pursuit {

enum class GradientMode {
  analytic,           // use the index's gradient (all built-in indexes have one)
  finite_difference,  // central differences; slower, works for any index
};

struct PursuitConfig {
  std::size_t restarts = 16;
  std::size_t max_iters = 500;
  double step_init = 1.0;
  double tol = 1e-7;  // convergence threshold on the iterate displacement
  std::uint64_t seed = 0;
  GradientMode gradient_mode = GradientMode::analytic;
};

struct TracePoint {
  std::size_t iteration;
  double value;
  double step;  // accepted step length (0 for the initial point)
};

struct RestartTrace {
  std::vector<TracePoint> points;  // monotone nondecreasing in value
  Vector direction;                // final iterate (unit norm)
  double value = 0.0;              // final index value
  bool failed = false;
  std::string error;
};

struct DirectionSearch {
  Vector direction;  // best direction over restarts, unit norm
  double value = 0.0;
  std::size_t chosen_restart = 0;  // ties go to the lowest restart index
  std::vector<RestartTrace> restarts;
};

// Maximizes the index over unit directions orthogonal to `orthogonal_to`
// (projected gradient ascent with backtracking line search, seeded restarts).
// Throws an optimizer error only if every restart fails.
DirectionSearch pursue_one(const Matrix& x, const indexes::ProjectionIndex& index,
                           const std::vector<Vector>& orthogonal_to,
                           const PursuitConfig& cfg);

struct PursuitResult {
  Matrix directions;  // k x d, orthonormal rows, in extraction order
  Vector values;
  std::vector<std::size_t> chosen_restarts;
  std::vector<std::vector<RestartTrace>> traces;
};

// Deflation: direction j is found orthogonal to directions 0..j-1. Each
// direction gets its own seeded substream, so results for direction j do not
// depend on how many further directions are requested.
PursuitResult pursue_k(const Matrix& x, const indexes::ProjectionIndex& index, std::size_t k,
                       const PursuitConfig& cfg);

struct PcaResult {
  Matrix components;  // k x d, rows are eigenvectors of the covariance
  Vector explained_variances;
};

PcaResult pca(const Matrix& x, std::size_t k);

// Plain projection: rows of `directions` are the axes; returns X D^T (n x k).
Matrix embed(const Matrix& x, const Matrix& directions);

}  // namespace ppursuit::pursuit
