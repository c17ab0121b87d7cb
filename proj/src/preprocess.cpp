#include "ppursuit/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include "ppursuit/csv.hpp"
#include "ppursuit/error.hpp"

namespace ppursuit::preprocess {

CountMatrix load_counts(const std::string& path) {
  csv::Table t = csv::load_table(path, /*require_nonnegative=*/true);
  return CountMatrix{std::move(t.row_ids), std::move(t.col_ids), std::move(t.values)};
}

LabelTable load_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ExitCode::parse, "cannot open file: " + path);
  }
  LabelTable table;
  std::string line;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(ExitCode::parse, path + ": row " + std::to_string(row_no) + ": empty line");
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw Error(ExitCode::parse,
                  path + ": row " + std::to_string(row_no) + ": expected 2 fields");
    }
    const std::string id = line.substr(0, comma);
    const std::string label = line.substr(comma + 1);
    if (row_no == 1) {
      if (id != "cell_id" || label != "label") {
        throw Error(ExitCode::parse,
                    path + ": row 1: expected header 'cell_id,label', got '" + line + "'");
      }
      continue;
    }
    if (id.empty()) {
      throw Error(ExitCode::parse, path + ": row " + std::to_string(row_no) + ": empty cell id");
    }
    if (!table.by_cell.emplace(id, label).second) {
      throw Error(ExitCode::parse,
                  path + ": row " + std::to_string(row_no) + ": duplicate cell id '" + id + "'");
    }
  }
  if (row_no == 0) {
    throw Error(ExitCode::parse, path + ": file is empty");
  }
  return table;
}

void write_counts(const CountMatrix& m, const std::string& path) {
  csv::Table t;
  t.row_ids = m.cell_ids;
  t.col_ids = m.gene_ids;
  t.values = m.counts;
  csv::write_table(t, path);
}

std::vector<std::size_t> zero_filter_columns(const Matrix& counts, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw Error(ExitCode::dimension, "zero-fraction threshold must lie in (0, 1]");
  }
  const double n = static_cast<double>(counts.rows());
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < counts.cols(); ++j) {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < counts.rows(); ++i) {
      if (counts(i, j) == 0.0) ++zeros;
    }
    // Removed only when *strictly more* than threshold * n_cells are zero.
    if (static_cast<double>(zeros) <= threshold * n) kept.push_back(j);
  }
  return kept;
}

CountMatrix filter_genes(const CountMatrix& m, double zero_fraction_threshold) {
  const std::vector<std::size_t> kept = zero_filter_columns(m.counts, zero_fraction_threshold);
  if (kept.empty()) {
    throw Error(ExitCode::empty_result,
                "all " + std::to_string(m.gene_ids.size()) +
                    " genes removed by the zero-expression filter (threshold " +
                    csv::format_double(zero_fraction_threshold) + ")");
  }
  CountMatrix out;
  out.cell_ids = m.cell_ids;
  out.counts = Matrix(m.counts.rows(), kept.size(), 0.0);
  out.gene_ids.reserve(kept.size());
  for (std::size_t jj = 0; jj < kept.size(); ++jj) {
    out.gene_ids.push_back(m.gene_ids[kept[jj]]);
    for (std::size_t i = 0; i < m.counts.rows(); ++i) {
      out.counts(i, jj) = m.counts(i, kept[jj]);
    }
  }
  return out;
}

Matrix quantile_normalize_rows(const Matrix& values) {
  const std::size_t n = values.rows();
  const std::size_t g = values.cols();

  // Reference distribution: per-rank mean of each row's order statistics.
  Vector reference(g, 0.0);
  Vector sorted(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = values.row(i);
    std::copy(r, r + g, sorted.begin());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 0; j < g; ++j) reference[j] += sorted[j];
  }
  for (double& v : reference) v /= static_cast<double>(n);

  // Prefix sums make tied-span means O(1).
  Vector ref_prefix(g + 1, 0.0);
  for (std::size_t j = 0; j < g; ++j) ref_prefix[j + 1] = ref_prefix[j] + reference[j];

  Matrix out(n, g, 0.0);
  std::vector<std::size_t> order(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = values.row(i);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
    std::size_t lo = 0;
    while (lo < g) {
      std::size_t hi = lo + 1;
      while (hi < g && r[order[hi]] == r[order[lo]]) ++hi;
      // Every value in the tied span [lo, hi) gets the span's reference mean,
      // so ties in the input remain ties in the output.
      const double mean_ref = (ref_prefix[hi] - ref_prefix[lo]) / static_cast<double>(hi - lo);
      for (std::size_t k = lo; k < hi; ++k) out(i, order[k]) = mean_ref;
      lo = hi;
    }
  }
  return out;
}

CountMatrix quantile_normalize(const CountMatrix& m) {
  CountMatrix out;
  out.cell_ids = m.cell_ids;
  out.gene_ids = m.gene_ids;
  out.counts = quantile_normalize_rows(m.counts);
  return out;
}

std::vector<std::string> join_labels(const std::vector<std::string>& cell_ids,
                                     const LabelTable& labels) {
  std::vector<std::string> out;
  out.reserve(cell_ids.size());
  std::vector<std::string> missing;
  for (const std::string& id : cell_ids) {
    const auto it = labels.by_cell.find(id);
    if (it == labels.by_cell.end()) {
      if (missing.size() < 10) missing.push_back(id);
    } else {
      out.push_back(it->second);
    }
  }
  if (out.size() != cell_ids.size()) {
    std::string msg = "labels file is missing " +
                      std::to_string(cell_ids.size() - out.size()) + " cell id(s):";
    for (const std::string& id : missing) msg += " " + id;
    if (cell_ids.size() - out.size() > missing.size()) msg += " ...";
    throw Error(ExitCode::parse, msg);
  }
  return out;
}

}  // namespace ppursuit::preprocess
