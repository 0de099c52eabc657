// SPDX-License-Identifier: Apache-2.0
#include "wsr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace wsr {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config c;
  c.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key or value", lineno);
    c.values_[key] = value;
    c.lines_[key] = lineno;
  }
  return c;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

Real Config::parse_number(const std::string& key) const {
  const std::string& v = values_.at(key);
  std::size_t pos = 0;
  Real out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size()) {
    const int line = lines_.count(key) ? lines_.at(key) : 0;
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": malformed numeric value for '" +
                          key + "': " + v,
                      line);
  }
  return out;
}

Real Config::get_real(const std::string& key) const {
  if (!has(key)) throw ConfigError("missing config key: " + key);
  return parse_number(key);
}

Real Config::get_real(const std::string& key, Real fallback) const {
  return has(key) ? parse_number(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const Real v = get_real(key);
  if (std::abs(v - std::round(v)) > 1e-9)
    throw ConfigError("config key '" + key + "' must be an integer");
  return int(std::lround(v));
}

int Config::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? values_.at(key) : fallback;
}

std::vector<std::string> Config::unknown_keys(const std::set<std::string>& accepted) const {
  std::vector<std::string> bad;
  for (const auto& [key, value] : values_) {
    bool ok = accepted.count(key) > 0;
    if (!ok) {
      // prefix match for indexed families like potential.cos.3
      for (const auto& a : accepted)
        if (a.back() == '.' && key.rfind(a, 0) == 0) ok = true;
    }
    if (!ok) bad.push_back(key);
  }
  return bad;
}

SystemParams Config::system_params() const {
  SystemParams s;
  s.hbar = get_real("hbar", 1.0);
  s.F = get_real("F", 0.0);
  s.eps = get_real("eps", 0.0);
  s.omega = get_real("omega", 0.0);
  s.p = get_int("p", 1);
  s.q = get_int("q", 1);
  if (s.eps > 0 && !has("F")) s.F = s.hbar * s.omega * s.q / (two_pi * s.p);
  s.validate();
  return s;
}

PeriodicPotential Config::potential() const {
  PeriodicPotential V;
  auto set_coeff = [](std::vector<Real>& vec, int idx, Real value, int min_idx) {
    if (idx < min_idx) throw ConfigError("potential harmonic index out of range");
    const int slot = idx - min_idx;
    if (int(vec.size()) <= slot) vec.resize(slot + 1, 0.0);
    vec[slot] = value;
  };
  for (const auto& [key, value] : values_) {
    if (key.rfind("potential.", 0) != 0) continue;
    const std::string rest = key.substr(10);
    std::string kind = rest;
    int idx = 1;
    const auto dot = rest.find('.');
    if (dot != std::string::npos) {
      kind = rest.substr(0, dot);
      idx = std::stoi(rest.substr(dot + 1));
    }
    if (kind == "cos")
      set_coeff(V.cos_coeffs, idx, parse_number(key), 0);
    else if (kind == "sin")
      set_coeff(V.sin_coeffs, idx, parse_number(key), 1);
    else
      throw ConfigError("unknown potential component: " + key);
  }
  return V;
}

}  // namespace wsr
