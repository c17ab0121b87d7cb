// ppursuit command line tool: preprocessing, PCA / projection-pursuit
// embeddings, and spectral / Gaussianity diagnostics over CSV matrices.
//
// Exit codes (stable contract): 0 success, 1 usage, 2 parse, 3 empty result,
// 4 dimension or numerical guard, 5 optimizer failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ppursuit/csv.hpp"
#include "ppursuit/error.hpp"
#include "ppursuit/indexes.hpp"
#include "ppursuit/linalg.hpp"
#include "ppursuit/manifest.hpp"
#include "ppursuit/matrix.hpp"
#include "ppursuit/preprocess.hpp"
#include "ppursuit/pursuit.hpp"
#include "ppursuit/random.hpp"
#include "ppursuit/spectra.hpp"
#include "ppursuit/svg.hpp"
#include "ppursuit/synth.hpp"
#include "ppursuit/version.hpp"

namespace {

using namespace ppursuit;

// One manifest next to every file a command produces; identical content apart
// from the `output` key, so any single manifest suffices to reproduce the run.
struct ManifestWriter {
  manifest::Manifest base;

  ManifestWriter(const std::string& command, std::uint64_t seed, bool record_seed) {
    base.set("command", command);
    base.set("version", std::string(kVersion));
    if (record_seed) base.set("seed", seed);
  }

  void param(const std::string& key, const std::string& value) { base.set(key, value); }
  void param(const std::string& key, double value) { base.set(key, value); }
  void param(const std::string& key, std::uint64_t value) { base.set(key, value); }

  void input(const std::string& path) {
    base.set("input", path);
    base.set("input_digest", manifest::file_digest(path));
  }

  void emit(const std::string& output_path) const {
    manifest::Manifest m = base;
    m.set("output", output_path);
    m.write(output_path + ".manifest");
  }
};

Vector matrix_column(const Matrix& m, std::size_t j) {
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

std::vector<std::string> labels_for(const std::vector<std::string>& cell_ids,
                                    const std::string& labels_path) {
  if (labels_path.empty()) return {};
  return preprocess::join_labels(cell_ids, preprocess::load_labels(labels_path));
}

void write_scatter_plot(const std::string& plot_path, const Matrix& embedding,
                        const std::vector<std::string>& labels, const std::string& title) {
  svg::write_scatter(plot_path, matrix_column(embedding, 0), matrix_column(embedding, 1),
                     labels, title);
}

// --- preprocess ----------------------------------------------------------------

struct PreprocessArgs {
  std::string in_csv;
  std::string out_csv;
  double zero_frac = 0.8;
  bool skip_quantile = false;
};

void run_preprocess(const PreprocessArgs& a) {
  const preprocess::CountMatrix raw = preprocess::load_counts(a.in_csv);
  const std::size_t genes_before = raw.gene_ids.size();

  preprocess::CountMatrix kept = preprocess::filter_genes(raw, a.zero_frac);
  if (!a.skip_quantile) kept = preprocess::quantile_normalize(kept);
  preprocess::write_counts(kept, a.out_csv);

  std::cout << "kept " << kept.gene_ids.size() << " of " << genes_before << " genes, "
            << kept.cell_ids.size() << " cells\n";

  ManifestWriter mw("preprocess", 0, false);
  mw.param("zero_frac", a.zero_frac);
  mw.param("skip_quantile", std::string(a.skip_quantile ? "true" : "false"));
  mw.input(a.in_csv);
  mw.emit(a.out_csv);
}

// --- pca -------------------------------------------------------------------

struct PcaArgs {
  std::string in_csv;
  std::string out_csv;
  std::size_t k = 2;
  std::string labels_path;
  std::string plot_path;
};

void run_pca(const PcaArgs& a) {
  if (!a.plot_path.empty() && a.k != 2) {
    throw Error(ExitCode::usage, "pca: --plot requires --k=2");
  }
  const csv::Table table = csv::load_table(a.in_csv, false);
  const std::vector<std::string> labels = labels_for(table.row_ids, a.labels_path);

  const pursuit::PcaResult res = pursuit::pca(table.values, a.k);
  const Matrix scores = pursuit::embed(linalg::centered(table.values), res.components);
  csv::write_embedding(table.row_ids, scores, a.out_csv);

  for (std::size_t j = 0; j < a.k; ++j) {
    std::cout << "component " << (j + 1)
              << ": explained_variance=" << csv::format_double(res.explained_variances[j])
              << "\n";
  }

  ManifestWriter mw("pca", 0, false);
  mw.param("k", static_cast<std::uint64_t>(a.k));
  if (!a.labels_path.empty()) mw.param("labels", a.labels_path);
  mw.input(a.in_csv);
  mw.emit(a.out_csv);
  if (!a.plot_path.empty()) {
    write_scatter_plot(a.plot_path, scores, labels, "pca embedding");
    mw.emit(a.plot_path);
  }
}

// --- pp --------------------------------------------------------------------

struct PpArgs {
  std::string in_csv;
  std::string out_csv;
  std::string index_name = "logcosh";
  std::size_t k = 2;
  double alpha = 1.0;
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
  std::string labels_path;
  std::string plot_path;
};

std::unique_ptr<indexes::ProjectionIndex> make_index(const std::string& name, double alpha) {
  if (name == "logcosh") return std::make_unique<indexes::LogCoshIndex>(alpha);
  if (name == "cumulant") return std::make_unique<indexes::CumulantIndex>();
  return std::make_unique<indexes::VarianceIndex>();
}

void run_pp(const PpArgs& a) {
  if (!a.plot_path.empty() && a.k != 2) {
    throw Error(ExitCode::usage, "pp: --plot requires --k=2");
  }
  const csv::Table table = csv::load_table(a.in_csv, false);
  const std::vector<std::string> labels = labels_for(table.row_ids, a.labels_path);

  const std::unique_ptr<indexes::ProjectionIndex> index = make_index(a.index_name, a.alpha);
  // Negentropy-style indexes assume unit-covariance input; variance is asked
  // on the centered data so it agrees with PCA.
  const Matrix prepared = index->wants_whitened_input() ? linalg::whiten(table.values).data
                                                        : linalg::centered(table.values);

  pursuit::PursuitConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  const pursuit::PursuitResult res = pursuit::pursue_k(prepared, *index, a.k, cfg);

  const Matrix embedding = pursuit::embed(prepared, res.directions);
  csv::write_embedding(table.row_ids, embedding, a.out_csv);

  for (std::size_t j = 0; j < a.k; ++j) {
    std::cout << "direction " << (j + 1) << ": value=" << csv::format_double(res.values[j])
              << " restart=" << res.chosen_restarts[j] << "\n";
  }

  ManifestWriter mw("pp", a.seed, true);
  mw.param("index", a.index_name);
  mw.param("k", static_cast<std::uint64_t>(a.k));
  mw.param("alpha", a.alpha);
  mw.param("restarts", static_cast<std::uint64_t>(a.restarts));
  if (!a.labels_path.empty()) mw.param("labels", a.labels_path);
  mw.input(a.in_csv);
  mw.emit(a.out_csv);
  if (!a.plot_path.empty()) {
    write_scatter_plot(a.plot_path, embedding, labels, "projection pursuit embedding");
    mw.emit(a.plot_path);
  }
}

// --- spectrum ----------------------------------------------------------------

struct SpectrumArgs {
  std::string out_csv;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string plot_path;
};

void run_spectrum(const SpectrumArgs& a) {
  const spectra::SpectralSample sample = spectra::simulate_wishart_esd(a.n, a.d, a.seed);
  csv::write_column(sample.eigenvalues, "eigenvalue", a.out_csv);

  const double dist = spectra::esd_vs_mp_distance(sample);
  std::cout << "l1_distance=" << csv::format_double(dist) << "\n";

  ManifestWriter mw("spectrum", a.seed, true);
  mw.param("n", static_cast<std::uint64_t>(a.n));
  mw.param("d", static_cast<std::uint64_t>(a.d));
  mw.emit(a.out_csv);

  if (!a.plot_path.empty()) {
    // Same binning as the reported distance: 64 equal bins on [0, 1.1 b+].
    const double gamma = static_cast<double>(a.d) / static_cast<double>(a.n);
    const spectra::MPParams p(gamma);
    constexpr std::size_t kBins = 64;
    const double hi = 1.1 * p.b_plus;
    const double width = hi / static_cast<double>(kBins);

    Vector edges(kBins + 1);
    for (std::size_t i = 0; i <= kBins; ++i) edges[i] = width * static_cast<double>(i);
    std::vector<std::uint64_t> counts(kBins, 0);
    for (const double ev : sample.eigenvalues) {
      std::size_t idx = 0;
      if (ev > 0.0) idx = std::min(static_cast<std::size_t>(ev / width), kBins - 1);
      ++counts[idx];
    }

    constexpr std::size_t kCurvePoints = 257;
    Vector cx(kCurvePoints);
    Vector cy(kCurvePoints);
    for (std::size_t i = 0; i < kCurvePoints; ++i) {
      cx[i] = hi * static_cast<double>(i) / static_cast<double>(kCurvePoints - 1);
      cy[i] = spectra::mp_density(cx[i], gamma);
    }
    svg::write_histogram_overlay(a.plot_path, edges, counts, cx, cy,
                                 "eigenvalue spectrum vs limiting density");
    mw.emit(a.plot_path);
  }
}

// --- dfcheck -----------------------------------------------------------------

struct DfcheckArgs {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

void run_dfcheck(const DfcheckArgs& a) {
  const Vector ks = spectra::df_projection_experiment(a.n, a.d, a.m, a.seed);
  double lo = ks[0];
  double hi = ks[0];
  for (const double v : ks) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::cout << "ks median=" << csv::format_double(spectra::median(ks))
            << " min=" << csv::format_double(lo) << " max=" << csv::format_double(hi) << "\n";
}

// --- jl ----------------------------------------------------------------------

struct JlArgs {
  std::string in_csv;
  std::size_t r = 0;  // 0: derive from delta via the distortion bound
  double delta = 0.5;
  std::uint64_t seed = 0;
};

void run_jl(const JlArgs& a) {
  if (!(a.delta > 0.0) || !std::isfinite(a.delta)) {
    throw Error(ExitCode::usage, "jl: delta must be positive");
  }
  const csv::Table table = csv::load_table(a.in_csv, false);
  const std::size_t n = table.values.rows();
  const std::size_t d = table.values.cols();

  std::size_t r = a.r;
  if (r == 0) {
    r = static_cast<std::size_t>(
        std::ceil(16.0 * std::log(static_cast<double>(n)) / (a.delta * a.delta)));
  }

  const Matrix projection =
      indexes::random_projection(d, r, derive_seed(a.seed, stream::projection, 0));
  const Matrix z = pursuit::embed(table.values, projection);
  const indexes::JlDistortion dist = indexes::jl_distortion(table.values, z);

  std::cout << "r=" << r << " max_relative=" << csv::format_double(dist.max_relative)
            << " delta=" << csv::format_double(a.delta)
            << " result=" << (dist.max_relative <= a.delta ? "pass" : "fail") << "\n";
}

// --- synth-clusters ------------------------------------------------------------

struct SynthArgs {
  std::string counts_out;
  std::string labels_out;
  std::size_t n = 1000;
  std::size_t dim = 10;
  double separation = 4.0;
  double spread = 10.0;
  std::uint64_t seed = 0;
};

void run_synth(const SynthArgs& a) {
  const synth::TwoClusterData data = synth::make_two_clusters(
      {a.n, a.dim, a.separation, a.spread, a.seed});

  csv::Table table;
  table.row_ids.reserve(a.n);
  for (std::size_t i = 0; i < a.n; ++i) table.row_ids.push_back("cell" + std::to_string(i + 1));
  table.col_ids.reserve(a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) table.col_ids.push_back("f" + std::to_string(j + 1));
  table.values = data.data;
  csv::write_table(table, a.counts_out);

  std::ofstream labels(a.labels_out, std::ios::binary);
  if (!labels) {
    throw Error(ExitCode::parse, "synth-clusters: cannot open " + a.labels_out + " for writing");
  }
  labels << "cell_id,label\n";
  for (std::size_t i = 0; i < a.n; ++i) {
    labels << table.row_ids[i] << ",cluster" << data.labels[i] << "\n";
  }
  labels.close();

  std::cout << "wrote " << a.n << " cells, " << a.dim << " features\n";

  ManifestWriter mw("synth-clusters", a.seed, true);
  mw.param("n", static_cast<std::uint64_t>(a.n));
  mw.param("dim", static_cast<std::uint64_t>(a.dim));
  mw.param("separation", a.separation);
  mw.param("spread", a.spread);
  mw.emit(a.counts_out);
  mw.emit(a.labels_out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection pursuit dimension reduction and spectral diagnostics"};
  app.set_version_flag("--version", std::string(ppursuit::kVersion));
  app.require_subcommand(1);

  PreprocessArgs pre;
  CLI::App* c_pre = app.add_subcommand("preprocess", "zero-filter genes and quantile normalize");
  c_pre->add_option("in", pre.in_csv, "input counts CSV")->required();
  c_pre->add_option("out", pre.out_csv, "output CSV")->required();
  c_pre->add_option("--zero-frac", pre.zero_frac,
                    "drop genes whose zero fraction strictly exceeds this");
  c_pre->add_flag("--skip-quantile", pre.skip_quantile, "filter only, no quantile normalization");
  c_pre->callback([&] { run_preprocess(pre); });

  PcaArgs pca_args;
  CLI::App* c_pca = app.add_subcommand("pca", "principal component embedding");
  c_pca->add_option("in", pca_args.in_csv, "input CSV")->required();
  c_pca->add_option("out", pca_args.out_csv, "output embedding CSV")->required();
  c_pca->add_option("--k", pca_args.k, "number of components");
  c_pca->add_option("--labels", pca_args.labels_path, "cell_id,label CSV for plotting");
  c_pca->add_option("--plot", pca_args.plot_path, "scatter SVG path (k = 2 only)");
  c_pca->callback([&] { run_pca(pca_args); });

  PpArgs pp_args;
  CLI::App* c_pp = app.add_subcommand("pp", "projection pursuit embedding");
  c_pp->add_option("in", pp_args.in_csv, "input CSV")->required();
  c_pp->add_option("out", pp_args.out_csv, "output embedding CSV")->required();
  c_pp->add_option("--index", pp_args.index_name, "projection index")
      ->check(CLI::IsMember({"logcosh", "cumulant", "variance"}));
  c_pp->add_option("--k", pp_args.k, "number of directions");
  c_pp->add_option("--alpha", pp_args.alpha, "logcosh alpha in [1, 2]");
  c_pp->add_option("--restarts", pp_args.restarts, "optimizer restarts per direction");
  c_pp->add_option("--seed", pp_args.seed, "random seed");
  c_pp->add_option("--labels", pp_args.labels_path, "cell_id,label CSV for plotting");
  c_pp->add_option("--plot", pp_args.plot_path, "scatter SVG path (k = 2 only)");
  c_pp->callback([&] { run_pp(pp_args); });

  SpectrumArgs sp;
  CLI::App* c_sp = app.add_subcommand("spectrum", "empirical Wishart spectrum diagnostics");
  c_sp->add_option("out", sp.out_csv, "eigenvalues CSV")->required();
  c_sp->add_option("--n", sp.n, "sample count")->required();
  c_sp->add_option("--d", sp.d, "dimension")->required();
  c_sp->add_option("--seed", sp.seed, "random seed");
  c_sp->add_option("--plot", sp.plot_path, "histogram-overlay SVG path");
  c_sp->callback([&] { run_spectrum(sp); });

  DfcheckArgs df;
  CLI::App* c_df = app.add_subcommand("dfcheck", "Gaussianity of random projections");
  c_df->add_option("--n", df.n, "sample count")->required();
  c_df->add_option("--d", df.d, "dimension")->required();
  c_df->add_option("--m", df.m, "number of directions")->required();
  c_df->add_option("--seed", df.seed, "random seed");
  c_df->callback([&] { run_dfcheck(df); });

  JlArgs jl;
  CLI::App* c_jl = app.add_subcommand("jl", "random projection distortion check");
  c_jl->add_option("in", jl.in_csv, "input CSV")->required();
  c_jl->add_option("--r", jl.r, "target dimension (default: from delta)");
  c_jl->add_option("--delta", jl.delta, "distortion budget");
  c_jl->add_option("--seed", jl.seed, "random seed");
  c_jl->callback([&] { run_jl(jl); });

  SynthArgs sy;
  CLI::App* c_sy = app.add_subcommand(
      "synth-clusters", "two Gaussian clusters with a loud orthogonal noise axis");
  c_sy->add_option("counts_out", sy.counts_out, "data CSV path")->required();
  c_sy->add_option("labels_out", sy.labels_out, "labels CSV path")->required();
  c_sy->add_option("--n", sy.n, "number of cells");
  c_sy->add_option("--dim", sy.dim, "dimension");
  c_sy->add_option("--separation", sy.separation, "cluster center distance");
  c_sy->add_option("--spread", sy.spread, "noise-axis standard deviation");
  c_sy->add_option("--seed", sy.seed, "random seed");
  c_sy->callback([&] { run_synth(sy); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage error
    return rc == 0 ? 0 : static_cast<int>(ppursuit::ExitCode::usage);
  } catch (const ppursuit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ppursuit::ExitCode::usage);
  }
  return 0;
}
