#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace cme::app {

/// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double v);

/// Comma-separated table with LF line endings. Rows must match the header
/// width and numeric cells must be finite.
class CsvTable {
 public:
  using Cell = std::variant<std::string, double, std::int64_t>;

  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<Cell> row);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  std::size_t column_index(const std::string& name) const;
  /// Numeric column as doubles (integers are widened).
  std::vector<double> numeric_column(const std::string& name) const;

  std::string render() const;

  /// Writes to "<path>.tmp" and renames over `path`.
  void write_atomic(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

/// Atomic write of arbitrary text (used for the resolved-config sidecars).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace cme::app
