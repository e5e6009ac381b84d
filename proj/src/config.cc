#include "bnls/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bnls {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  for (char ch : k) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '.' || ch == '_' ||
                    ch == '-';
    if (!ok) return false;
  }
  return k.find("..") == std::string::npos;
}

double parse_double(const std::string& origin, const std::string& key,
                    const std::string& v) {
  errno = 0;
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || v.empty() || errno == ERANGE)
    throw ConfigError(origin + ": key '" + key + "': not a number: '" + v +
                      "'");
  return x;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& origin) {
  Config c;
  c.text_ = text;
  c.origin_ = origin.empty() ? "<config>" : origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(c.origin_ + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError(c.origin_ + ":" + std::to_string(lineno) +
                        ": malformed key '" + key + "'");
    if (val.empty())
      throw ConfigError(c.origin_ + ":" + std::to_string(lineno) +
                        ": empty value for key '" + key + "'");
    if (!c.kv_.emplace(key, val).second)
      throw ConfigError(c.origin_ + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    c.consumed_[key] = false;
  }
  return c;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::value_of(const std::string& key) {
  auto it = kv_.find(key);
  if (it == kv_.end())
    throw ConfigError(origin_ + ": missing required key '" + key + "'");
  consumed_[key] = true;
  return it->second;
}

std::string Config::get_string(const std::string& key) { return value_of(key); }

std::string Config::get_string_or(const std::string& key,
                                  const std::string& fb) {
  return has(key) ? value_of(key) : fb;
}

double Config::get_double(const std::string& key) {
  return parse_double(origin_, key, value_of(key));
}

double Config::get_double_or(const std::string& key, double fb) {
  return has(key) ? get_double(key) : fb;
}

std::int64_t Config::get_int(const std::string& key) {
  const std::string v = value_of(key);
  errno = 0;
  char* end = nullptr;
  long long x = std::strtoll(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty() || errno == ERANGE)
    throw ConfigError(origin_ + ": key '" + key + "': not an integer: '" + v +
                      "'");
  return x;
}

std::int64_t Config::get_int_or(const std::string& key, std::int64_t fb) {
  return has(key) ? get_int(key) : fb;
}

std::uint64_t Config::get_u64_or(const std::string& key, std::uint64_t fb) {
  if (!has(key)) return fb;
  const std::string v = value_of(key);
  errno = 0;
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size() || v.empty() || errno == ERANGE)
    throw ConfigError(origin_ + ": key '" + key + "': not a u64: '" + v + "'");
  return x;
}

bool Config::get_bool_or(const std::string& key, bool fb) {
  if (!has(key)) return fb;
  const std::string v = value_of(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(origin_ + ": key '" + key + "': not a boolean: '" + v +
                    "'");
}

std::vector<double> Config::get_list(const std::string& key) {
  const std::string v = value_of(key);
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    std::string item =
        trim(comma == std::string::npos ? v.substr(pos)
                                        : v.substr(pos, comma - pos));
    if (item.empty())
      throw ConfigError(origin_ + ": key '" + key + "': empty list element");
    out.push_back(parse_double(origin_, key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty())
    throw ConfigError(origin_ + ": key '" + key + "': empty list");
  return out;
}

std::vector<double> Config::get_list_or(const std::string& key,
                                        const std::vector<double>& fb) {
  return has(key) ? get_list(key) : fb;
}

void Config::check_consumed() const {
  std::string bad;
  for (const auto& [key, used] : consumed_)
    if (!used) bad += (bad.empty() ? "" : ", ") + key;
  if (!bad.empty())
    throw ConfigError(origin_ + ": unknown key(s): " + bad);
}

}  // namespace bnls
