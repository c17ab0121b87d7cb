#include "ppursuit/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ppursuit/error.hpp"

namespace ppursuit::csv {

namespace {

[[noreturn]] void parse_error(const std::string& path, const std::string& what) {
  throw Error(ExitCode::parse, path + ": " + what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ExitCode::parse, "cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  // A trailing newline leaves no phantom last row; interior blank lines are
  // kept so they can be reported as errors with the right row number.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_number(const std::string& path, std::size_t row, std::size_t col,
                    const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    parse_error(path, "row " + std::to_string(row) + ", column " + std::to_string(col) +
                          ": cannot parse '" + field + "' as a number");
  }
  if (!std::isfinite(value)) {
    parse_error(path, "row " + std::to_string(row) + ", column " + std::to_string(col) +
                          ": non-finite value '" + field + "'");
  }
  return value;
}

}  // namespace

Table load_table(const std::string& path, bool require_nonnegative) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  if (lines.empty()) parse_error(path, "file is empty");

  const std::vector<std::string> header = split_fields(lines[0]);
  if (header[0] != "cell_id") {
    parse_error(path, "row 1, column 1: expected header 'cell_id', got '" + header[0] + "'");
  }
  if (header.size() < 2) {
    parse_error(path, "row 1: header has no value columns");
  }
  Table t;
  std::unordered_set<std::string> seen_cols;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j].empty()) {
      parse_error(path, "row 1, column " + std::to_string(j + 1) + ": empty column name");
    }
    if (!seen_cols.insert(header[j]).second) {
      parse_error(path, "row 1: duplicate column name '" + header[j] + "'");
    }
    t.col_ids.push_back(header[j]);
  }

  if (lines.size() < 2) parse_error(path, "file has no data rows");
  const std::size_t cols = t.col_ids.size();
  t.values = Matrix(lines.size() - 1, cols, 0.0);
  std::unordered_set<std::string> seen_rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row_no = r + 1;  // 1-based, header is row 1
    const std::vector<std::string> fields = split_fields(lines[r]);
    if (fields.size() != cols + 1) {
      parse_error(path, "row " + std::to_string(row_no) + ": expected " +
                            std::to_string(cols + 1) + " fields, got " +
                            std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      parse_error(path, "row " + std::to_string(row_no) + ", column 1: empty cell id");
    }
    if (!seen_rows.insert(fields[0]).second) {
      parse_error(path, "row " + std::to_string(row_no) + ": duplicate cell id '" + fields[0] + "'");
    }
    t.row_ids.push_back(fields[0]);
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = parse_number(path, row_no, j + 2, fields[j + 1]);
      if (require_nonnegative && v < 0.0) {
        parse_error(path, "row " + std::to_string(row_no) + ", column " + std::to_string(j + 2) +
                              ": negative value " + fields[j + 1] + " not allowed");
      }
      t.values(r - 1, j) = v;
    }
  }
  return t;
}

void write_table(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ExitCode::parse, "cannot write file: " + path);
  }
  out << "cell_id";
  for (const std::string& c : table.col_ids) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < table.row_ids.size(); ++i) {
    out << table.row_ids[i];
    for (std::size_t j = 0; j < table.values.cols(); ++j) {
      out << ',' << format_double(table.values(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw Error(ExitCode::parse, "write failed: " + path);
  }
}

void write_embedding(const std::vector<std::string>& row_ids, const Matrix& embedding,
                     const std::string& path) {
  Table t;
  t.row_ids = row_ids;
  for (std::size_t j = 0; j < embedding.cols(); ++j) {
    t.col_ids.push_back("dim" + std::to_string(j + 1));
  }
  t.values = embedding;
  write_table(t, path);
}

void write_column(const Vector& values, const std::string& header, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ExitCode::parse, "cannot write file: " + path);
  }
  out << header << '\n';
  for (double v : values) out << format_double(v) << '\n';
  if (!out) {
    throw Error(ExitCode::parse, "write failed: " + path);
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace ppursuit::csv
