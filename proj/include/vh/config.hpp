#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "vh/errors.hpp"

namespace vh {

/// Contents of a flat `key = value` run file. Every field is optional; callers
/// layer explicit command-line values on top.
struct RunConfig {
  std::optional<double> eta0, eta1, eta2, delta, hbar, mu;
  std::optional<std::string> variant;
  std::optional<int> n, l, N;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is available in libstdc++ 11.
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ValidationError("config key '" + std::string(key) + "': not a number: '" +
                          std::string(v) + "'");
  return out;
}

inline int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ValidationError("config key '" + std::string(key) + "': not an integer: '" +
                          std::string(v) + "'");
  return out;
}

} // namespace detail

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped. Keys are case-sensitive (`n` is the radial number, `N` the
/// dimension). Unknown keys and malformed lines are validation errors.
inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    line = detail::trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (value.empty())
      throw ValidationError("config line " + std::to_string(line_no) + ": empty value");

    if (key == "eta0") cfg.eta0 = detail::parse_double(key, value);
    else if (key == "eta1") cfg.eta1 = detail::parse_double(key, value);
    else if (key == "eta2") cfg.eta2 = detail::parse_double(key, value);
    else if (key == "delta") cfg.delta = detail::parse_double(key, value);
    else if (key == "hbar") cfg.hbar = detail::parse_double(key, value);
    else if (key == "mu") cfg.mu = detail::parse_double(key, value);
    else if (key == "variant") cfg.variant = std::string(value);
    else if (key == "n") cfg.n = detail::parse_int(key, value);
    else if (key == "l") cfg.l = detail::parse_int(key, value);
    else if (key == "N") cfg.N = detail::parse_int(key, value);
    else
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                            std::string(key) + "'");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

} // namespace vh
