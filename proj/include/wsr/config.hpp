// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_CONFIG_HPP
#define WSR_CONFIG_HPP

#include "wsr/lattice.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

namespace wsr {

// key = value lines, '#' comments.  Repeatable potential harmonics use
// indexed keys: potential.cos (harmonic 1), potential.cos.2, potential.sin.3, ...
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text, const std::string& origin = "<memory>");

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  Real get_real(const std::string& key) const;
  Real get_real(const std::string& key, Real fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback = "") const;

  // Keys never read back; used to reject unknown input.
  std::vector<std::string> unknown_keys(const std::set<std::string>& accepted_prefixes) const;

  SystemParams system_params() const;
  PeriodicPotential potential() const;

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  std::string origin_;

  Real parse_number(const std::string& key) const;
};

// Input rejected: carries the offending line number.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_number(line) {}
  int line_number = 0;
};

}  // namespace wsr

#endif  // WSR_CONFIG_HPP
