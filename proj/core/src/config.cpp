#include "swirlbound/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "swirlbound/errors.hpp"

namespace swirlbound {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("line " + std::to_string(lineno) +
                              " is not key = value",
                          stripped);
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw ConfigInvalid("empty key on line " + std::to_string(lineno), key);
    cfg.entries[key] = trim(stripped.substr(eq + 1));
  }
  return cfg;
}

bool Config::has(const std::string& key) const {
  return entries.count(key) != 0;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigInvalid("not a number: '" + it->second + "'", key);
  return v;
}

std::int64_t Config::get_int(const std::string& key,
                             std::int64_t fallback) const {
  const auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw ConfigInvalid("not an integer: '" + it->second + "'", key);
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigInvalid("not a boolean: '" + v + "'", key);
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = entries.find(key);
  return it == entries.end() ? fallback : it->second;
}

std::vector<double> Config::get_list(
    const std::string& key, const std::vector<double>& fallback) const {
  const auto it = entries.find(key);
  if (it == entries.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string s = trim(item);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw ConfigInvalid("not a number in list: '" + s + "'", key);
    out.push_back(v);
  }
  if (out.empty())
    throw ConfigInvalid("empty list", key);
  return out;
}

void Config::restrict_keys(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : entries)
    if (allowed.count(key) == 0)
      throw ConfigInvalid("unknown parameter for this experiment", key);
}

}  // namespace swirlbound
