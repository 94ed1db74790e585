#include "levito/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "levito/config.hpp"
#include "levito/error.hpp"

namespace levito {
namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> split_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw DomainError("csv: unterminated quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

void ResultTable::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size()) throw DomainError("result row width does not match the header");
  for (const auto& v : row) {
    if (v && !std::isfinite(*v)) throw DomainError("result row contains a non-finite value");
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("no column named '" + name + "'");
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i != 0) out << ',';
    out << quote(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != 0) out << ',';
      if (row[i]) out << format_double(*row[i]);
    }
    out << '\n';
  }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_csv(out, table);
  out.flush();
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

ResultTable parse_csv(const std::string& text) {
  const auto records = split_records(text);
  ResultTable t;
  if (records.empty()) return t;
  t.columns = records.front();
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<std::optional<double>> row;
    for (const auto& field : records[r]) {
      if (field.empty()) {
        row.emplace_back();
        continue;
      }
      const auto v = parse_double(field);
      if (!v) throw DomainError("csv: bad number '" + field + "' in row " + std::to_string(r));
      row.emplace_back(*v);
    }
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace levito
