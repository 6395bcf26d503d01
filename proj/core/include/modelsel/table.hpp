#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace modelsel {

/// A CSV cell: null, a number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

inline bool is_null(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

/// Column-major table. Every column holds exactly `n_rows` cells.
class DataTable {
public:
  DataTable(std::vector<std::string> names, std::vector<std::vector<Cell>> columns);

  const std::vector<std::string>& column_names() const noexcept { return names_; }
  const std::vector<Cell>& column(std::size_t i) const { return columns_.at(i); }
  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_columns() const noexcept { return names_.size(); }
  /// Index of the named column, or n_columns() when absent.
  std::size_t find(std::string_view name) const;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<Cell>> columns_;
  std::size_t n_rows_ = 0;
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
};

/// RFC 4180 reader. Empty fields and NA/NaN/null (any case) load as null;
/// fields that parse fully as a finite decimal load as numbers.
/// Throws SyntaxError on ragged rows or empty input, IoError on invalid UTF-8.
DataTable load_table(std::string_view bytes, const CsvOptions& options = {});

/// Reads a file and calls load_table. Throws IoError if unreadable.
DataTable load_table_file(const std::string& path, const CsvOptions& options = {});

} // namespace modelsel
