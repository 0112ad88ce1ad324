#include "cme/app/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cme::app {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("csv: refusing to format a non-finite value");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("csv: header must not be empty");
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("csv: row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (const double* d = std::get_if<double>(&row[c]); d && !std::isfinite(*d)) {
      throw std::domain_error("csv: non-finite value in column '" + header_[c] + "'");
    }
  }
  rows_.push_back(std::move(row));
}

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (header_[c] == name) return c;
  }
  throw std::out_of_range("csv: no column '" + name + "'");
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (const double* d = std::get_if<double>(&row[c])) {
      out.push_back(*d);
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&row[c])) {
      out.push_back(static_cast<double>(*i));
    } else {
      throw std::invalid_argument("csv: column '" + name + "' is not numeric");
    }
  }
  return out;
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t c = 0; c < header_.size(); ++c) out += (c ? "," : "") + header_[c];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
              out += v;
            } else if constexpr (std::is_same_v<T, double>) {
              out += format_double(v);
            } else {
              out += std::to_string(v);
            }
          },
          row[c]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write_atomic(const std::filesystem::path& path) const {
  write_text_atomic(path, render());
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

}  // namespace cme::app
