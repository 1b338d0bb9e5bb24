#ifndef BOHM_IO_CSV_HPP
#define BOHM_IO_CSV_HPP

// Locale-independent CSV: comma separated, one header row, '.' decimal point.
// Numbers are written in shortest round-trip form, so reading a file back
// yields bit-identical doubles.

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bohm/error.hpp"

namespace bohm::io {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw DomainError("csv: not a number: '" + std::string(s) + "'");
  return v;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::size_t column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw DomainError("csv: no column '" + std::string(name) + "'");
  }

  [[nodiscard]] std::vector<double> column(std::string_view name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &r : rows) out.push_back(r[c]);
    return out;
  }
};

inline void write_csv_header(std::ostream &os, std::span<const std::string> header) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
}

inline void write_csv_row(std::ostream &os, std::span<const double> row) {
  for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
  os << '\n';
}

inline void write_csv(std::ostream &os, const CsvTable &t) {
  write_csv_header(os, t.header);
  for (const auto &r : t.rows) write_csv_row(os, r);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline CsvTable read_csv(std::istream &is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw DomainError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  for (auto f : split_commas(line)) t.header.emplace_back(f);
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto fields = split_commas(line);
    if (fields.size() != t.header.size()) throw DomainError("csv: ragged row");
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_double(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

} // namespace bohm::io

#endif // BOHM_IO_CSV_HPP
