#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace itcat {

/// Exact rational used for probabilities, fuzzy grades and utilities.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// Accepts `p/q` or a plain integer. Decimals are rejected.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!digits_ok(text, true)) return std::nullopt;
  } else {
    if (!digits_ok(text.substr(0, slash), true) || !digits_ok(text.substr(slash + 1), false))
      return std::nullopt;
    if (text.substr(slash + 1).find_first_not_of('0') == std::string_view::npos) return std::nullopt;
  }
  std::string owned(text[0] == '+' ? text.substr(1) : text);
  Rational r;
  if (r.set_str(owned, 10) != 0) return std::nullopt;
  r.canonicalize();
  return r;
}

}  // namespace itcat
