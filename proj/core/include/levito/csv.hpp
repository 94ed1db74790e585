#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace levito {

/// Named columns of optional doubles; an empty cell means "not computed".
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;

  /// Throws DomainError on a width mismatch or a non-finite value.
  void add_row(std::vector<std::optional<double>> row);
  std::size_t column(const std::string& name) const;  // throws when absent
};

/// %.17g; reads back to the same double.
std::string format_double(double v);

/// RFC 4180 quoting with "\n" line ends; empty cells for missing values.
void write_csv(std::ostream& out, const ResultTable& table);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

/// Inverse of write_csv for tables written by this library.
ResultTable read_csv(const std::filesystem::path& path);
ResultTable parse_csv(const std::string& text);

}  // namespace levito
