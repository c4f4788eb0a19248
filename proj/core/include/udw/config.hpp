#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace udw {

/// Flat key-value text configuration.
///
/// Format: one `key = value` pair per line, `#` starts a comment, blank
/// lines ignored. Values are stored as strings; numeric accessors parse
/// on demand. Numbers are serialized with 17 significant digits so that
/// doubles round-trip bit-exactly.
class Config {
 public:
  Config() = default;

  /// Parses configuration text. Throws DomainError on malformed lines
  /// or duplicate keys.
  static Config parse(std::string_view text);

  /// Loads and parses a file. Throws IoError if unreadable.
  static Config load(const std::string& path);

  /// Canonical serialization: keys in sorted order, one per line.
  std::string serialize() const;

  bool has(const std::string& key) const;
  double get_number(const std::string& key) const;
  double get_number_or(const std::string& key, double fallback) const;
  const std::string& get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;

  void set_number(const std::string& key, double value);
  void set_string(const std::string& key, const std::string& value);
  void erase(const std::string& key);

  /// FNV-1a 64-bit hash of the canonical serialization. Any change to a
  /// key or value changes the hash.
  std::uint64_t hash() const;

  const std::map<std::string, std::string>& items() const { return items_; }

 private:
  std::map<std::string, std::string> items_;
};

/// Formats a double with 17 significant digits (exact round trip).
std::string format_number(double value);

}  // namespace udw
