#include "ppursuit/synth.hpp"

#include "ppursuit/error.hpp"
#include "ppursuit/random.hpp"

namespace ppursuit::synth {

TwoClusterData make_two_clusters(const TwoClusterConfig& cfg) {
  if (cfg.n < 2 || cfg.dim < 2) {
    throw Error(ExitCode::dimension, "two-cluster generator requires n >= 2 and dim >= 2");
  }
  if (!(cfg.separation > 0.0) || !(cfg.spread > 0.0)) {
    throw Error(ExitCode::dimension, "two-cluster generator: separation and spread must be positive");
  }
  Rng rng(derive_seed(cfg.seed, stream::data, 0));
  const Matrix rot = random_rotation(cfg.dim, rng);

  TwoClusterData out;
  out.data = Matrix(cfg.n, cfg.dim, 0.0);
  out.labels.resize(cfg.n);
  out.separation_direction.resize(cfg.dim);
  for (std::size_t i = 0; i < cfg.dim; ++i) out.separation_direction[i] = rot(i, 0);

  Vector local(cfg.dim);
  const double half = cfg.separation / 2.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const int label = static_cast<int>(i % 2);  // alternate for an exactly balanced mixture
    out.labels[i] = label;
    local[0] = (label == 0 ? half : -half) + rng.normal();
    local[1] = cfg.spread * rng.normal();
    for (std::size_t j = 2; j < cfg.dim; ++j) local[j] = rng.normal();
    // x = R * local; column 0 of R is the separation direction, column 1 the
    // loud noise direction.
    double* row = out.data.row(i);
    for (std::size_t r = 0; r < cfg.dim; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cfg.dim; ++c) s += rot(r, c) * local[c];
      row[r] = s;
    }
  }
  return out;
}

}  // namespace ppursuit::synth
