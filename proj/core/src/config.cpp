#include "udw/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "udw/errors.hpp"

namespace udw {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++lineno;

    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string stripped = trim(line);
    if (stripped.empty()) continue;

    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    }
    if (cfg.items_.count(key)) {
      throw DomainError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.items_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : items_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

bool Config::has(const std::string& key) const { return items_.count(key) != 0; }

double Config::get_number(const std::string& key) const {
  auto it = items_.find(key);
  if (it == items_.end()) throw DomainError("config: missing key '" + key + "'");
  const std::string& s = it->second;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw DomainError("config: key '" + key + "' is not a number: '" + s + "'");
  }
  return v;
}

double Config::get_number_or(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

const std::string& Config::get_string(const std::string& key) const {
  auto it = items_.find(key);
  if (it == items_.end()) throw DomainError("config: missing key '" + key + "'");
  return it->second;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
  auto it = items_.find(key);
  return it == items_.end() ? fallback : it->second;
}

void Config::set_number(const std::string& key, double value) {
  items_[key] = format_number(value);
}

void Config::set_string(const std::string& key, const std::string& value) {
  items_[key] = value;
}

void Config::erase(const std::string& key) { items_.erase(key); }

std::uint64_t Config::hash() const {
  // FNV-1a over the canonical serialization
  std::uint64_t h = 1469598103934665603ull;
  for (char c : serialize()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace udw
