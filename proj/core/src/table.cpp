#include "modelsel/table.hpp"

#include "modelsel/error.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace modelsel {

DataTable::DataTable(std::vector<std::string> names, std::vector<std::vector<Cell>> columns)
    : names_(std::move(names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size())
    throw DomainError("column name count does not match column count");
  n_rows_ = columns_.empty() ? 0 : columns_.front().size();
  for (const auto& col : columns_) {
    if (col.size() != n_rows_) throw DomainError("columns have unequal lengths");
  }
}

std::size_t DataTable::find(std::string_view name) const {
  return static_cast<std::size_t>(std::find(names_.begin(), names_.end(), name) - names_.begin());
}

namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c >> 5) == 0x6) len = 2;
    else if ((c >> 4) == 0xE) len = 3;
    else if ((c >> 3) == 0x1E) len = 4;
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += len;
  }
  return true;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

Cell to_cell(std::string field) {
  if (field.empty() || iequals(field, "NA") || iequals(field, "NaN") || iequals(field, "null"))
    return std::monostate{};
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc{} && ptr == last && std::isfinite(value)) return value;
  return field;
}

using Record = std::vector<std::string>;

std::vector<Record> split_records(std::string_view bytes, char delim) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_record = [&] {
    current.push_back(std::move(field));
    field.clear();
    // Blank lines carry no record.
    if (!(current.size() == 1 && current[0].empty() && !field_started)) records.push_back(current);
    current.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const char c = bytes[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == delim) {
      current.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' && i + 1 < bytes.size() && bytes[i + 1] == '\n') {
      // CRLF handled by the '\n' branch.
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw SyntaxError("unterminated quoted field at end of input (line " +
                                   std::to_string(line) + ")");
  if (field_started || !field.empty() || !current.empty()) end_record();
  return records;
}

} // namespace

DataTable load_table(std::string_view bytes, const CsvOptions& options) {
  if (!valid_utf8(bytes)) throw IoError("input is not valid UTF-8");
  std::vector<Record> records = split_records(bytes, options.delimiter);
  if (records.empty()) throw SyntaxError("empty CSV input");

  std::vector<std::string> names;
  std::size_t first_data = 0;
  const std::size_t width = records.front().size();
  if (options.header) {
    names = records.front();
    first_data = 1;
  } else {
    for (std::size_t i = 0; i < width; ++i) names.push_back("col_" + std::to_string(i));
  }

  std::vector<std::vector<Cell>> columns(width);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    if (records[r].size() != width)
      throw SyntaxError("ragged row " + std::to_string(r + 1) + ": expected " +
                        std::to_string(width) + " fields, found " +
                        std::to_string(records[r].size()));
    for (std::size_t c = 0; c < width; ++c) columns[c].push_back(to_cell(std::move(records[r][c])));
  }
  return DataTable(std::move(names), std::move(columns));
}

DataTable load_table_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return load_table(buf.str(), options);
}

} // namespace modelsel
