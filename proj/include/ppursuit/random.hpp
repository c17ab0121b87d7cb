#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "ppursuit/matrix.hpp"

namespace ppursuit {

// Stream tags used with derive_seed so that independent consumers of one user
// seed (data generation, restart r, direction j, projection draws, ...) get
// unrelated substreams. Adding restarts or directions never perturbs the
// streams of existing ones.
namespace stream {
inline constexpr std::uint64_t data = 0x01;
inline constexpr std::uint64_t direction = 0x02;
inline constexpr std::uint64_t restart = 0x03;
inline constexpr std::uint64_t projection = 0x04;
inline constexpr std::uint64_t labels = 0x05;
}  // namespace stream

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic substream derivation: mixes (seed, tag, index) into a fresh
// 64-bit seed. Collisions between distinct (tag, index) pairs are as unlikely
// as random 64-bit collisions.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x243f6a8885a308d3ULL);
  h = splitmix64(h ^ tag);
  h = splitmix64(h ^ index);
  return h;
}

// Seeded generator with uniform and normal draws. Normals come from our own
// Box-Muller (with cached spare) rather than std::normal_distribution, whose
// output is not pinned by the standard; this keeps runs bit-reproducible
// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Vector random_unit_vector(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ExitCode::dimension, "random_unit_vector: dimension must be positive");
  Vector v(d);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.normal();
    const double n = norm2(v);
    if (n > 1e-12) {
      scale(v, 1.0 / n);
      return v;
    }
  }
}

// Haar-ish random rotation: Gram-Schmidt on a square Gaussian matrix. Columns
// are the orthonormal frame; column 0 is what a caller typically uses as the
// planted direction.
inline Matrix random_rotation(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ExitCode::dimension, "random_rotation: dimension must be positive");
  Matrix q(d, d, 0.0);
  for (std::size_t col = 0; col < d; ++col) {
    Vector v(d);
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) v[i] = rng.normal();
      for (std::size_t prev = 0; prev < col; ++prev) {
        double proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += v[i] * q(i, prev);
        for (std::size_t i = 0; i < d; ++i) v[i] -= proj * q(i, prev);
      }
      const double n = norm2(v);
      if (n > 1e-8) {
        for (std::size_t i = 0; i < d; ++i) q(i, col) = v[i] / n;
        break;
      }
    }
  }
  return q;
}

}  // namespace ppursuit
