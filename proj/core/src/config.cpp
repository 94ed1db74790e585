#include "levito/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "levito/error.hpp"

namespace levito {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  }
  return true;
}

}  // namespace

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

Config Config::parse(std::string_view text, const std::string& source) {
  Config cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    std::string value;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    const auto hash = line.find('#');
    if (eq == std::string_view::npos || (hash != std::string_view::npos && hash < eq)) {
      if (!trim(line.substr(0, hash)).empty()) throw ConfigError(where, "expected 'key = value'");
      continue;
    }
    const std::string_view before = line.substr(0, eq);
    const std::string key(trim(before));
    std::string_view rest = trim(line.substr(eq + 1));
    if (!rest.empty() && rest.front() == '"') {
      const auto close = rest.find('"', 1);
      if (close == std::string_view::npos) throw ConfigError(where, "unterminated quote");
      value = std::string(rest.substr(1, close - 1));
      const auto tail = trim(rest.substr(close + 1));
      if (!tail.empty() && tail.front() != '#') throw ConfigError(where, "text after closing quote");
    } else {
      if (const auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
      value = std::string(trim(rest));
    }
    if (!valid_key(key)) throw ConfigError(where, "invalid key '" + key + "'");
    if (cfg.values_.count(key) != 0) throw ConfigError(key, "repeated at " + where);
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ConfigError(key, "invalid key");
  values_[key] = value;
}

void Config::erase(const std::string& key) { values_.erase(key); }

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing required key");
  used_.insert(key);
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string text = get_string(key);
  const auto v = parse_double(text);
  if (!v) throw ConfigError(key, "expected a finite number, got '" + text + "'");
  return *v;
}

long Config::get_int(const std::string& key) const {
  const std::string text = get_string(key);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key, long fallback) const { return has(key) ? get_int(key) : fallback; }

std::optional<double> Config::find_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) {
    if (used_.count(k) == 0) out.push_back(k);
  }
  return out;
}

}  // namespace levito
