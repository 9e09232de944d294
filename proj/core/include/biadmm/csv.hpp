#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biadmm/matrix.hpp"

namespace biadmm {

/// Parse failure with 1-based line/column coordinates.
struct CsvError : std::runtime_error {
  CsvError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct CsvMatrix {
  Matrix values;
  std::vector<std::string> col_names;  // empty when no header row
  std::vector<std::string> row_names;  // empty when no name column
};

/// Comma-delimited numeric matrix. A first row containing any non-numeric
/// cell is treated as a header; a first column whose data cells are
/// non-numeric is treated as row names. NaN cells are rejected.
CsvMatrix read_matrix_csv(const std::string& path);
CsvMatrix parse_matrix_csv(const std::string& text, const std::string& origin);

/// Writes with 17 significant digits and LF line endings so values
/// round-trip exactly.
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& col_names = {},
                      const std::vector<std::string>& row_names = {});

/// Label files: one 0-based integer per line.
std::vector<int> read_labels(const std::string& path);
void write_labels(const std::string& path, const std::vector<int>& labels);

/// Flat ordered key-value document used for run summaries and manifests.
/// Serialized one `key value` pair per line with a format version tag.
struct KeyValueDoc {
  std::vector<std::pair<std::string, std::string>> items;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  const std::string* find(const std::string& key) const;
};

void write_summary(const std::string& path, const KeyValueDoc& doc);
KeyValueDoc read_summary(const std::string& path);

/// Shortest decimal string that round-trips a double (17 significant digits).
std::string format_double(double value);

}  // namespace biadmm
