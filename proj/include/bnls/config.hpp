#pragma once
// Line-oriented configuration: `key = value` with dotted section prefixes
// (grid.n = 1024), `#` comments, and comma-separated numeric lists. No
// embedded programs. Every key must be consumed by exactly the command that
// runs: after a command has read its keys, check_consumed() turns any
// leftover (unknown/.misspelled) key into a hard error.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bnls/errors.hpp"

namespace bnls {

class Config {
 public:
  Config() = default;

  // Both throw ConfigError on syntax errors or duplicate keys.
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;

  // Typed getters; the *_or forms return the fallback when the key is
  // absent. All throw ConfigError when the value does not parse exactly.
  std::string get_string(const std::string& key);
  std::string get_string_or(const std::string& key, const std::string& fb);
  double get_double(const std::string& key);
  double get_double_or(const std::string& key, double fb);
  std::int64_t get_int(const std::string& key);
  std::int64_t get_int_or(const std::string& key, std::int64_t fb);
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fb);
  bool get_bool_or(const std::string& key, bool fb);
  std::vector<double> get_list(const std::string& key);
  std::vector<double> get_list_or(const std::string& key,
                                  const std::vector<double>& fb);

  // Throws ConfigError naming every key never retrieved by any getter.
  void check_consumed() const;

  // Exact text the config was parsed from (manifest snapshot).
  const std::string& text() const { return text_; }

 private:
  std::string value_of(const std::string& key);  // marks consumed; throws if absent

  std::string text_, origin_;
  std::map<std::string, std::string> kv_;
  std::map<std::string, bool> consumed_;
};

}  // namespace bnls
