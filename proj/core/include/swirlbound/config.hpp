#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace swirlbound {

// Flat key = value configuration. Lines starting with # and blank lines are
// skipped; values keep internal whitespace, keys may use dots for grouping.
struct Config {
  std::map<std::string, std::string> entries;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const;

  // typed getters; the fallback is used when the key is absent, a malformed
  // value throws ConfigInvalid naming the key
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  // comma-separated doubles
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& fallback) const;

  // throws ConfigInvalid naming the first key outside the allowed set
  void restrict_keys(const std::set<std::string>& allowed) const;
};

}  // namespace swirlbound
