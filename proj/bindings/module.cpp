// Python bindings for the library's main operations. Matrices cross the
// boundary as nested lists (list of rows); no numpy dependency.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ppursuit/error.hpp"
#include "ppursuit/indexes.hpp"
#include "ppursuit/info_theory.hpp"
#include "ppursuit/linalg.hpp"
#include "ppursuit/matrix.hpp"
#include "ppursuit/preprocess.hpp"
#include "ppursuit/pursuit.hpp"
#include "ppursuit/spectra.hpp"
#include "ppursuit/synth.hpp"
#include "ppursuit/version.hpp"

namespace py = pybind11;

namespace {

using namespace ppursuit;

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  if (rows.empty()) throw Error(ExitCode::dimension, "matrix must have at least one row");
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ExitCode::dimension, "matrix rows must all have the same length");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows from_matrix(const Matrix& m) {
  Rows rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  }
  return rows;
}

std::vector<double> from_vector(const Vector& v) { return {v.begin(), v.end()}; }

std::unique_ptr<indexes::ProjectionIndex> index_by_name(const std::string& name, double alpha) {
  if (name == "logcosh") return std::make_unique<indexes::LogCoshIndex>(alpha);
  if (name == "cumulant") return std::make_unique<indexes::CumulantIndex>();
  if (name == "variance") return std::make_unique<indexes::VarianceIndex>();
  if (name == "mean") return std::make_unique<indexes::MeanIndex>();
  throw Error(ExitCode::usage,
              "unknown index '" + name + "'; valid: logcosh, cumulant, variance, mean");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "projection pursuit dimension reduction: preprocessing, indexes, "
            "optimizer, and spectral diagnostics";
  m.attr("__version__") = kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  // --- preprocessing -------------------------------------------------------
  m.def(
      "quantile_normalize",
      [](const Rows& counts) { return from_matrix(preprocess::quantile_normalize_rows(to_matrix(counts))); },
      py::arg("counts"),
      "Quantile-normalize rows: each row is replaced by the per-rank mean of "
      "the sorted rows, assigned by rank; ties receive the tied span's mean.");
  m.def(
      "zero_filter_columns",
      [](const Rows& counts, double threshold) {
        return preprocess::zero_filter_columns(to_matrix(counts), threshold);
      },
      py::arg("counts"), py::arg("threshold") = 0.8,
      "Indexes of columns whose zero fraction does not exceed the threshold.");

  // --- core linear algebra -------------------------------------------------
  m.def(
      "covariance", [](const Rows& x) { return from_matrix(linalg::covariance(to_matrix(x))); },
      py::arg("x"), "Sample covariance (n-1 denominator).");
  m.def(
      "standardize", [](const Rows& x) { return from_matrix(linalg::standardize(to_matrix(x))); },
      py::arg("x"), "Per-column (x - mean) / sd.");
  m.def(
      "whiten",
      [](const Rows& x) {
        const linalg::WhitenResult r = linalg::whiten(to_matrix(x));
        return py::make_tuple(from_matrix(r.data), from_matrix(r.transform));
      },
      py::arg("x"),
      "Whiten to identity covariance; returns (data, transform) with "
      "transform the symmetric inverse square root of cov(x).");
  m.def(
      "pca",
      [](const Rows& x, std::size_t k) {
        const pursuit::PcaResult r = pursuit::pca(to_matrix(x), k);
        return py::make_tuple(from_matrix(r.components), from_vector(r.explained_variances));
      },
      py::arg("x"), py::arg("k"),
      "Top-k principal directions; returns (components, explained_variances).");
  m.def(
      "embed",
      [](const Rows& x, const Rows& directions) {
        return from_matrix(pursuit::embed(to_matrix(x), to_matrix(directions)));
      },
      py::arg("x"), py::arg("directions"), "Project rows of x onto the direction rows.");

  // --- projection pursuit ----------------------------------------------------
  m.def(
      "pursue",
      [](const Rows& x, const std::string& index, std::size_t k, double alpha,
         std::size_t restarts, std::uint64_t seed, bool whiten_input) {
        Matrix data = to_matrix(x);
        const std::unique_ptr<indexes::ProjectionIndex> idx = index_by_name(index, alpha);
        if (whiten_input && idx->wants_whitened_input()) {
          data = linalg::whiten(data).data;
        } else if (whiten_input) {
          data = linalg::centered(data);
        }
        pursuit::PursuitConfig cfg;
        cfg.restarts = restarts;
        cfg.seed = seed;
        const pursuit::PursuitResult r = pursuit::pursue_k(data, *idx, k, cfg);
        return py::make_tuple(from_matrix(r.directions), from_vector(r.values),
                              r.chosen_restarts);
      },
      py::arg("x"), py::arg("index") = "logcosh", py::arg("k") = 2, py::arg("alpha") = 1.0,
      py::arg("restarts") = 16, py::arg("seed") = 0, py::arg("prepare") = true,
      "Maximize the named projection index over k orthogonal unit directions. "
      "With prepare=True the input is whitened (negentropy indexes) or "
      "centered (variance/mean) first. Returns (directions, values, restarts).");

  // --- projection indexes ------------------------------------------------------
  m.def(
      "cumulant_negentropy",
      [](const std::vector<double>& z) { return indexes::cumulant_negentropy(z); }, py::arg("z"),
      "k3^2/12 + k4^2/48 of the standardized sample.");
  m.def(
      "logcosh_negentropy",
      [](const std::vector<double>& z, double alpha) {
        return indexes::logcosh_negentropy(z, alpha);
      },
      py::arg("z"), py::arg("alpha") = 1.0,
      "0.5 (mean log cosh(alpha z*)/alpha - gaussian baseline)^2.");
  m.def("logcosh_gaussian_baseline", &indexes::logcosh_gaussian_baseline, py::arg("alpha") = 1.0,
        "E[log cosh(alpha N(0,1)) / alpha] by quadrature.");
  m.def(
      "lda_direction",
      [](const std::vector<double>& mean1, const Rows& cov1, const std::vector<double>& mean2,
         const Rows& cov2) {
        indexes::GroupStats g1{Vector(mean1.begin(), mean1.end()), to_matrix(cov1)};
        indexes::GroupStats g2{Vector(mean2.begin(), mean2.end()), to_matrix(cov2)};
        return from_vector(indexes::lda_direction(g1, g2));
      },
      py::arg("mean1"), py::arg("cov1"), py::arg("mean2"), py::arg("cov2"),
      "Closed-form two-group separating direction (pooled covariance).");
  m.def(
      "random_projection",
      [](std::size_t d, std::size_t r, std::uint64_t seed) {
        return from_matrix(indexes::random_projection(d, r, seed));
      },
      py::arg("d"), py::arg("r"), py::arg("seed") = 0,
      "r x d gaussian projection matrix with N(0,1)/sqrt(r) entries.");
  m.def(
      "jl_distortion",
      [](const Rows& x, const Rows& z) {
        const indexes::JlDistortion d = indexes::jl_distortion(to_matrix(x), to_matrix(z));
        return py::make_tuple(d.sum_abs, d.max_relative, d.skipped);
      },
      py::arg("x"), py::arg("z"),
      "Pairwise squared-distance distortion; returns (sum_abs, max_relative, skipped).");

  // --- information theory -----------------------------------------------------
  m.def(
      "discrete_entropy",
      [](const std::vector<double>& p) { return info::discrete_entropy(p); }, py::arg("p"),
      "Shannon entropy in nats.");
  m.def(
      "kl_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return info::kl_divergence(p, q);
      },
      py::arg("p"), py::arg("q"), "Relative entropy in nats; +inf off support.");
  m.def(
      "differential_entropy",
      [](const std::vector<double>& samples, std::size_t bins) {
        return info::differential_entropy_hist(samples, bins);
      },
      py::arg("samples"), py::arg("bins") = 0,
      "Histogram plug-in differential entropy (nats); bins=0 picks the default rule.");
  m.def(
      "mutual_information",
      [](const std::vector<double>& x, const std::vector<double>& y, std::size_t bins) {
        return info::mutual_information_binned(x, y, bins);
      },
      py::arg("x"), py::arg("y"), py::arg("bins") = 0, "Binned plug-in mutual information.");
  m.def("hermite", &info::hermite, py::arg("n"), py::arg("x"),
        "Probabilists' Hermite polynomial He_n(x).");
  m.def("hermite_orthogonality", &info::hermite_orthogonality, py::arg("n"), py::arg("m"),
        "Quadrature of the weighted Hermite product (n! when n = m, else 0).");
  m.def(
      "ks_to_standard_normal",
      [](const std::vector<double>& samples) { return info::ks_to_standard_normal(samples); },
      py::arg("samples"), "Kolmogorov-Smirnov distance to N(0,1).");

  // --- spectra ------------------------------------------------------------------
  m.def("mp_density", &spectra::mp_density, py::arg("k"), py::arg("gamma"),
        "Marcenko-Pastur density at k for aspect ratio gamma in (0, 1].");
  m.def("mp_total_mass", &spectra::mp_total_mass, py::arg("gamma"),
        "Integral of the density over its support (= 1).");
  m.def("mp_mass_in", &spectra::mp_mass_in, py::arg("lo"), py::arg("hi"), py::arg("gamma"),
        "Integral of the density over [lo, hi].");
  m.def(
      "wishart_esd",
      [](std::size_t n, std::size_t d, std::uint64_t seed) {
        return from_vector(spectra::simulate_wishart_esd(n, d, seed).eigenvalues);
      },
      py::arg("n"), py::arg("d"), py::arg("seed") = 0,
      "Ascending eigenvalues of X^T X / n for an n x d standard gaussian X.");
  m.def(
      "esd_mp_distance",
      [](std::size_t n, std::size_t d, std::uint64_t seed) {
        return spectra::esd_vs_mp_distance(spectra::simulate_wishart_esd(n, d, seed));
      },
      py::arg("n"), py::arg("d"), py::arg("seed") = 0,
      "L1 distance between the simulated eigenvalue histogram and the "
      "Marcenko-Pastur law (64 bins on [0, 1.1 b+]).");
  m.def(
      "df_projection_experiment",
      [](std::size_t n, std::size_t d, std::size_t m_directions, std::uint64_t seed) {
        return from_vector(spectra::df_projection_experiment(n, d, m_directions, seed));
      },
      py::arg("n"), py::arg("d"), py::arg("m"), py::arg("seed") = 0,
      "KS distances to N(0,1) of m standardized random projections of an "
      "n x d matrix with uniform marginals.");

  // --- synthetic data --------------------------------------------------------
  m.def(
      "two_clusters",
      [](std::size_t n, std::size_t dim, double separation, double spread, std::uint64_t seed) {
        const synth::TwoClusterData data =
            synth::make_two_clusters({n, dim, separation, spread, seed});
        return py::make_tuple(from_matrix(data.data), data.labels,
                              from_vector(data.separation_direction));
      },
      py::arg("n") = 1000, py::arg("dim") = 10, py::arg("separation") = 4.0,
      py::arg("spread") = 10.0, py::arg("seed") = 0,
      "Two gaussian clusters split along a hidden direction with a louder "
      "orthogonal noise axis; returns (data, labels, direction).");
}
