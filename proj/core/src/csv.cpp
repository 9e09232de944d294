#include "biadmm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace biadmm {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

bool parse_cell(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

CsvMatrix parse_matrix_csv(const std::string& text, const std::string& origin) {
  std::vector<std::vector<std::string>> grid;
  {
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
      if (line.empty() || line == "\r") continue;
      grid.push_back(split_line(line));
    }
  }
  if (grid.empty()) throw CsvError(origin + ": empty input", 1, 1);

  const std::size_t width = grid[0].size();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid[r].size() != width)
      throw CsvError(origin + ": ragged row (expected " + std::to_string(width) + " cells)", r + 1,
                     grid[r].size());
  }

  // Header row: any non-numeric cell in the first row.
  double ignored;
  bool has_header = false;
  for (const std::string& cell : grid[0]) {
    if (!parse_cell(cell, ignored)) {
      has_header = true;
      break;
    }
  }
  const std::size_t first_data_row = has_header ? 1 : 0;
  if (first_data_row >= grid.size())
    throw CsvError(origin + ": no data rows below header", grid.size(), 1);

  // Row-name column: every data row's first cell non-numeric.
  bool has_row_names = !parse_cell(grid[first_data_row][0], ignored);
  const std::size_t first_data_col = has_row_names ? 1 : 0;
  if (first_data_col >= width) throw CsvError(origin + ": no numeric columns", 1, width);

  CsvMatrix out;
  const std::size_t n = grid.size() - first_data_row;
  const std::size_t p = width - first_data_col;
  out.values = Matrix(n, p);
  if (has_header) {
    for (std::size_t c = first_data_col; c < width; ++c) out.col_names.push_back(grid[0][c]);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = grid[r + first_data_row];
    if (has_row_names) out.row_names.push_back(row[0]);
    for (std::size_t c = 0; c < p; ++c) {
      double value;
      if (!parse_cell(row[c + first_data_col], value))
        throw CsvError(origin + ": non-numeric cell '" + row[c + first_data_col] + "'",
                       r + first_data_row + 1, c + first_data_col + 1);
      if (std::isnan(value))
        throw CsvError(origin + ": NaN cell", r + first_data_row + 1, c + first_data_col + 1);
      if (!std::isfinite(value))
        throw CsvError(origin + ": non-finite cell", r + first_data_row + 1,
                       c + first_data_col + 1);
      out.values(r, c) = value;
    }
  }
  return out;
}

CsvMatrix read_matrix_csv(const std::string& path) {
  return parse_matrix_csv(read_file(path), path);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& col_names,
                      const std::vector<std::string>& row_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  if (!col_names.empty()) {
    if (!row_names.empty()) out << "row";
    for (std::size_t j = 0; j < col_names.size(); ++j) {
      if (j > 0 || !row_names.empty()) out << ',';
      out << col_names[j];
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!row_names.empty()) out << row_names[i] << ',';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

std::vector<int> read_labels(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream stream(text);
  std::string line;
  std::vector<int> labels;
  std::size_t lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    double value;
    if (!parse_cell(line, value) || value != std::floor(value))
      throw CsvError(path + ": label is not an integer", lineno, 1);
    labels.push_back(static_cast<int>(value));
  }
  if (labels.empty()) throw CsvError(path + ": no labels", 1, 1);
  return labels;
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (int label : labels) out << label << '\n';
}

void KeyValueDoc::set(const std::string& key, const std::string& value) {
  items.emplace_back(key, value);
}
void KeyValueDoc::set(const std::string& key, double value) { set(key, format_double(value)); }
void KeyValueDoc::set(const std::string& key, long long value) {
  set(key, std::to_string(value));
}

const std::string* KeyValueDoc::find(const std::string& key) const {
  for (const auto& [k, v] : items)
    if (k == key) return &v;
  return nullptr;
}

void write_summary(const std::string& path, const KeyValueDoc& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (const auto& [key, value] : doc.items) out << key << ' ' << value << '\n';
}

KeyValueDoc read_summary(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream stream(text);
  std::string line;
  KeyValueDoc doc;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t space = line.find(' ');
    if (space == std::string::npos)
      doc.items.emplace_back(line, "");
    else
      doc.items.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  return doc;
}

}  // namespace biadmm
