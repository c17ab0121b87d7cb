#pragma once

#include <cstdint>
#include <vector>

#include "ppursuit/matrix.hpp"

namespace ppursuit::synth {

// Two Gaussian clusters split along a hidden direction, with one deliberately
// loud isotropic-noise-free axis: cluster centers sit at +-separation/2 along
// a random unit vector u, a second (rotated) axis carries N(0, spread^2)
// noise, and the remaining axes are standard normal. With spread >> separation
// the top variance direction is the noise axis, while the cluster split stays
// visible to negentropy-style indexes.
struct TwoClusterConfig {
  std::size_t n = 1000;
  std::size_t dim = 10;
  double separation = 4.0;
  double spread = 10.0;
  std::uint64_t seed = 0;
};

struct TwoClusterData {
  Matrix data;                  // n x dim
  std::vector<int> labels;      // 0 or 1, balanced
  Vector separation_direction;  // the hidden unit vector u
};

TwoClusterData make_two_clusters(const TwoClusterConfig& cfg);

}  // namespace ppursuit::synth
