#pragma once

// Plain-text rendering of numbers, cuboids and concepts for the CLI.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <system_error>

#include "cspace/concept.hpp"
#include "cspace/core.hpp"
#include "cspace/cuboid.hpp"

namespace cspace {

namespace detail {

// Lays out a mantissa/exponent pair: positional if -4 <= exp < 16, otherwise
// d.ddde+XX with at least two exponent digits. Integral values keep a ".0".
inline std::string layout_decimal(std::string digits, int exp, bool negative) {
  std::string out = negative ? "-" : "";
  if (exp >= -4 && exp < 16) {
    if (exp < 0) {
      out += "0." + std::string(static_cast<std::size_t>(-exp - 1), '0') + digits;
    } else if (static_cast<int>(digits.size()) <= exp + 1) {
      out += digits + std::string(static_cast<std::size_t>(exp + 1) - digits.size(), '0') + ".0";
    } else {
      out += digits.substr(0, static_cast<std::size_t>(exp + 1)) + "." +
             digits.substr(static_cast<std::size_t>(exp + 1));
    }
    return out;
  }
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%c%02d", exp < 0 ? '-' : '+', std::abs(exp));
  return out + buf;
}

// Splits to_chars scientific output into significant digits and exponent.
inline std::string format_scientific(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return std::signbit(v) ? "-0.0" : "0.0";
  char buf[64];
  const double mag = std::abs(v);
  const auto res = precision > 0 ? std::to_chars(buf, buf + sizeof buf, mag, std::chars_format::scientific, precision - 1)
                                 : std::to_chars(buf, buf + sizeof buf, mag, std::chars_format::scientific);
  std::string text(buf, res.ptr);
  const auto e = text.find('e');
  std::string mantissa = text.substr(0, e);
  const int exp = std::stoi(text.substr(e + 1));
  std::string digits;
  for (char ch : mantissa) {
    if (ch != '.') digits += ch;
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  return layout_decimal(digits, exp, v < 0);
}

}  // namespace detail

/// Shortest decimal that reads back to the same double.
inline std::string format_real(double v) { return detail::format_scientific(v, 0); }

/// At most 12 significant digits; used inside concept blocks.
inline std::string format_short(double v) { return detail::format_scientific(v, 12); }

inline std::string format_cuboid(const Cuboid& c) {
  auto vec = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_short(v[i]);
    return s + "]";
  };
  return vec(c.p_min()) + "-" + vec(c.p_max());
}

inline std::string format_core(const Core& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.cuboids().size(); ++i) out += (i ? ", " : "") + format_cuboid(s.cuboids()[i]);
  return out + "}";
}

inline std::string format_weights(const Weights& w) {
  std::string doms = "{";
  std::string dims = "{";
  bool first = true;
  for (const auto& [id, dw] : w.domain_weights()) {
    const std::string sep = first ? "" : ", ";
    doms += sep + "'" + id + "': " + format_short(dw);
    dims += sep + "'" + id + "': {";
    bool inner_first = true;
    for (const auto& [d, wd] : w.dimension_weights().at(id)) {
      dims += (inner_first ? "" : ", ") + std::to_string(d) + ": " + format_short(wd);
      inner_first = false;
    }
    dims += "}";
    first = false;
  }
  return "<" + doms + "}," + dims + "}>";
}

/// core / mu / c / weights block, one line each.
inline std::string format_concept(const Concept& t) {
  return "core: " + format_core(t.core()) + "\nmu: " + format_short(t.mu0()) + "\nc: " + format_short(t.c()) +
         "\nweights: " + format_weights(t.weights()) + "\n";
}

}  // namespace cspace
