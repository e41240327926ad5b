#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nlabel/column_kind.hpp"
#include "nlabel/error.hpp"
#include "nlabel/text.hpp"

namespace nlabel {

struct IngestOptions {
  std::set<std::string> missing_tokens{"", "NA", "N/A", "null", "NULL", "NaN"};
  char delimiter = ',';
  std::map<std::string, ColumnKind> type_overrides;
  std::size_t max_rows = 100000;
};

// Immutable parsed snapshot of a CSV file. Cells keep their raw text; the
// missing mask records which cells matched a missing token.
class DataTable {
 public:
  DataTable() = default;

  DataTable(std::vector<std::string> columns, std::vector<std::string> cells,
            std::vector<std::uint8_t> missing, std::string source_name)
      : columns_(std::move(columns)),
        cells_(std::move(cells)),
        missing_(std::move(missing)),
        source_name_(std::move(source_name)) {
    if (!columns_.empty() && cells_.size() % columns_.size() != 0)
      throw Error("DataTable: cell count is not a multiple of the column count");
    if (missing_.size() != cells_.size())
      throw Error("DataTable: missing mask does not match cell grid");
    if (columns_.empty() && !cells_.empty())
      throw Error("DataTable: cells without columns");
  }

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t column_count() const noexcept { return columns_.size(); }
  std::size_t row_count() const noexcept {
    return columns_.empty() ? 0 : cells_.size() / columns_.size();
  }
  const std::string& source_name() const noexcept { return source_name_; }

  const std::string& cell(std::size_t row, std::size_t col) const {
    return cells_[row * columns_.size() + col];
  }
  bool is_missing(std::size_t row, std::size_t col) const {
    return missing_[row * columns_.size() + col] != 0;
  }

  // Index of `name`, or column_count() when absent.
  std::size_t find_column(std::string_view name) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
      if (columns_[c] == name) return c;
    return columns_.size();
  }

  std::size_t column_index(std::string_view name) const {
    std::size_t c = find_column(name);
    if (c == columns_.size()) throw ConfigError("unknown column '" + std::string(name) + "'");
    return c;
  }

  std::size_t missing_in_column(std::size_t col) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < row_count(); ++r) n += is_missing(r, col) ? 1 : 0;
    return n;
  }

  std::size_t missing_total() const {
    std::size_t n = 0;
    for (auto m : missing_) n += m;
    return n;
  }

  std::vector<ColumnValue> column_values(std::size_t col) const {
    std::vector<ColumnValue> out;
    out.reserve(row_count());
    for (std::size_t r = 0; r < row_count(); ++r) out.push_back({cell(r, col), is_missing(r, col)});
    return out;
  }

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> cells_;
  std::vector<std::uint8_t> missing_;
  std::string source_name_;
};

namespace detail {

class CsvReader {
 public:
  CsvReader(std::string_view data, char delim) : data_(data), delim_(delim) {}

  // Reads one record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    if (pos_ >= data_.size()) return false;
    ++record_;
    start_line_ = line_;
    blank_ = data_[pos_] == '\n' || data_[pos_] == '\r';
    std::string field;
    bool quoted_field = false;
    while (true) {
      if (pos_ >= data_.size()) {
        fields.push_back(std::move(field));
        return true;
      }
      char c = data_[pos_];
      if (c == '"' && field.empty() && !quoted_field) {
        read_quoted(field);
        quoted_field = true;
        continue;
      }
      if (c == delim_) {
        fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
        ++pos_;
        continue;
      }
      if (c == '\n' || c == '\r') {
        ++pos_;
        if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        ++line_;
        fields.push_back(std::move(field));
        return true;
      }
      if (quoted_field)
        throw ParseError("record " + std::to_string(record_) + " (line " +
                             std::to_string(line_) + "): unexpected character after closing quote",
                         record_);
      field += c;
      ++pos_;
    }
  }

  std::size_t record() const noexcept { return record_; }
  std::size_t start_line() const noexcept { return start_line_; }
  // The last record was an empty line (no characters before the newline).
  bool blank() const noexcept { return blank_; }

 private:
  void read_quoted(std::string& field) {
    ++pos_;  // opening quote
    while (true) {
      if (pos_ >= data_.size())
        throw ParseError("record " + std::to_string(record_) + " (line " +
                             std::to_string(start_line_) + "): unterminated quoted field",
                         record_);
      char c = data_[pos_++];
      if (c == '"') {
        if (pos_ < data_.size() && data_[pos_] == '"') {
          field += '"';
          ++pos_;
          continue;
        }
        return;
      }
      if (c == '\n') ++line_;
      field += c;
    }
  }

  std::string_view data_;
  char delim_;
  std::size_t pos_ = 0;
  std::size_t record_ = 0;
  std::size_t line_ = 1;
  std::size_t start_line_ = 1;
  bool blank_ = false;
};

}  // namespace detail

inline void check_options(const IngestOptions& options) {
  char d = options.delimiter;
  if (d == '"' || d == '\n' || d == '\r')
    throw ConfigError("delimiter may not be a quote or newline character");
}

// RFC-4180 parse of `data` (header row first). A leading UTF-8 BOM is
// stripped. Records that are entirely empty are skipped.
inline DataTable parse_csv(std::string_view data, const IngestOptions& options = {},
                           std::string source_name = "") {
  check_options(options);
  if (data.size() >= 3 && data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);
  if (data.empty()) throw ParseError("empty input: expected a header row");

  detail::CsvReader reader(data, options.delimiter);
  std::vector<std::string> fields;
  bool have_header = false;
  while (!have_header) {
    if (!reader.next(fields)) throw ParseError("empty input: expected a header row");
    have_header = !reader.blank();
  }
  std::vector<std::string> columns;
  std::unordered_set<std::string> seen;
  for (auto& f : fields) {
    std::string name(text::trim(f));
    if (!seen.insert(name).second)
      throw ParseError("duplicate header name '" + name + "'", reader.record());
    columns.push_back(std::move(name));
  }

  std::vector<std::string> cells;
  std::vector<std::uint8_t> missing;
  std::size_t rows = 0;
  while (reader.next(fields)) {
    if (reader.blank()) continue;
    if (fields.size() != columns.size())
      throw ParseError("record " + std::to_string(reader.record()) + " (line " +
                           std::to_string(reader.start_line()) + "): expected " +
                           std::to_string(columns.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       reader.record());
    if (++rows > options.max_rows)
      throw ParseError("input exceeds the " + std::to_string(options.max_rows) +
                       "-row limit; sample the dataset before labeling it");
    for (auto& f : fields) {
      missing.push_back(options.missing_tokens.count(std::string(text::trim(f))) ? 1 : 0);
      cells.push_back(std::move(f));
    }
  }
  return DataTable(std::move(columns), std::move(cells), std::move(missing),
                   std::move(source_name));
}

inline DataTable parse_csv(std::istream& in, const IngestOptions& options = {},
                           std::string source_name = "") {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_csv(std::string_view(data), options, std::move(source_name));
}

inline DataTable read_csv_file(const std::string& path, const IngestOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  return parse_csv(in, options, name);
}

namespace detail {

inline void write_field(std::string& out, const std::string& value, char delim, bool lone) {
  bool quote = (lone && value.empty()) || value.find_first_of(std::string{delim, '"', '\n', '\r'}) !=
                                              std::string::npos;
  if (!quote && !value.empty() && value.front() == '"') quote = true;
  if (!quote) {
    out += value;
    return;
  }
  out += '"';
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace detail

// Inverse of parse_csv: header plus rows, RFC-4180 quoting where needed.
inline std::string write_csv(const DataTable& table, char delim = ',') {
  std::string out;
  bool lone = table.column_count() == 1;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    if (c) out += delim;
    detail::write_field(out, table.columns()[c], delim, lone);
  }
  out += '\n';
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    for (std::size_t c = 0; c < table.column_count(); ++c) {
      if (c) out += delim;
      detail::write_field(out, table.cell(r, c), delim, lone);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nlabel
