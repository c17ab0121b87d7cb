#pragma once

#include <string>
#include <vector>

#include "ppursuit/matrix.hpp"

namespace ppursuit::csv {

// A dense CSV table: header "cell_id,<col>,<col>,..." and one row per cell.
struct Table {
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  Matrix values;
};

// Strict parser: exact field counts, unique non-empty ids, finite numbers.
// require_nonnegative additionally rejects values < 0 (counts matrices).
// Errors carry 1-based row/column coordinates.
Table load_table(const std::string& path, bool require_nonnegative);

void write_table(const Table& table, const std::string& path);

// Embedding writer: header cell_id,dim1,...,dimk.
void write_embedding(const std::vector<std::string>& row_ids, const Matrix& embedding,
                     const std::string& path);

// Single-column writer with the given header name.
void write_column(const Vector& values, const std::string& header, const std::string& path);

// All numeric output goes through this: %.17g, enough digits to round-trip.
std::string format_double(double v);

}  // namespace ppursuit::csv
