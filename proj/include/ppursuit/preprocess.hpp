#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ppursuit/matrix.hpp"

namespace ppursuit::preprocess {

// Cells x genes expression counts. Counts are nonnegative but not necessarily
// integral (upstream tools emit fractional expected counts).
struct CountMatrix {
  std::vector<std::string> cell_ids;
  std::vector<std::string> gene_ids;
  Matrix counts;
};

struct LabelTable {
  std::unordered_map<std::string, std::string> by_cell;
};

// CSV with header cell_id,<gene>,... ; rejects negative values.
CountMatrix load_counts(const std::string& path);

// CSV with header cell_id,label.
LabelTable load_labels(const std::string& path);

void write_counts(const CountMatrix& m, const std::string& path);

// Drops every gene whose zero-count fraction strictly exceeds the threshold
// (a gene at exactly the threshold is kept). threshold must lie in (0, 1].
CountMatrix filter_genes(const CountMatrix& m, double zero_fraction_threshold);

// Quantile normalization across cells: every cell's values are replaced by
// the reference distribution (the per-rank mean of the sorted rows), assigned
// by rank; tied values all receive the mean of the reference over the tied
// span, so ties stay ties.
CountMatrix quantile_normalize(const CountMatrix& m);

// Labels in cell order; errors (listing up to 10 ids) if any cell is missing.
std::vector<std::string> join_labels(const std::vector<std::string>& cell_ids,
                                     const LabelTable& labels);

// Matrix-level cores of the two transforms (also exposed to Python).
std::vector<std::size_t> zero_filter_columns(const Matrix& counts, double threshold);
Matrix quantile_normalize_rows(const Matrix& values);

}  // namespace ppursuit::preprocess
