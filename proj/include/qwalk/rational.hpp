#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace qwalk {

using Rat = mpq_class;

// Accepts "n", "n/d", with optional leading sign. No decimals: values must stay exact.
inline Rat parse_rational(std::string_view s) {
  auto fail = [&] { throw ParseError("malformed rational \"" + std::string(s) + "\""); };
  if (s.empty()) fail();
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  std::size_t slash = s.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t k = b; k < e; ++k)
      if (s[k] < '0' || s[k] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits(i, s.size())) fail();
  } else {
    if (!digits(i, slash) || !digits(slash + 1, s.size())) fail();
  }
  Rat r;
  std::string buf(s[0] == '+' ? s.substr(1) : s);
  if (r.set_str(buf, 10) != 0) fail();
  if (r.get_den() == 0) fail();
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str() + "/1";
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// 17 significant digits, locale independent.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("malformed float \"" + s + "\"");
  return v;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

inline double to_double(const Rat& r) { return r.get_d(); }
inline double to_double(double v) { return v; }

}  // namespace qwalk
