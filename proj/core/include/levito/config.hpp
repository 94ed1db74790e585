#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace levito {

/// Flat `section.key = value` configuration. Lines starting with '#' are
/// comments, and so is anything after an unquoted '#'. Keys are
/// case-sensitive; a repeated key is an error.
class Config {
 public:
  static Config parse(std::string_view text, const std::string& source = "<string>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key);

  /// Throw ConfigError naming the key when absent or malformed.
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::optional<double> find_double(const std::string& key) const;

  /// Keys present in the file that no getter has asked for.
  std::vector<std::string> unused_keys() const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

/// Parse a double the same way config values are parsed (whole string, finite).
std::optional<double> parse_double(std::string_view text);

}  // namespace levito
