#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace segguard {

// Exact rational carrier for every quantity in the toolkit. GMP keeps values
// canonical (reduced, positive denominator) through arithmetic; input strings
// go through parse_rational below, which normalizes by construction.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p", "-p", "p/q" with optional surrounding whitespace. Non-reduced
// input is reduced on read; a zero denominator is rejected.
inline Rational parse_rational(std::string_view text) {
  const auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  const auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("empty integer in rational literal");
    for (char c : s)
      if (c < '0' || c > '9')
        throw ParseError("invalid character '" + std::string(1, c) + "' in rational literal");
    Integer v{std::string(s)};
    if (neg) v = -v;
    return v;
  };

  text = trim(text);
  if (text.empty()) throw ParseError("empty rational literal");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Integer num = parse_int(text.substr(0, slash));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in rational literal");
  return Rational(num) / Rational(den);  // division canonicalizes
}

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Shortest round-trip decimal rendering, byte-stable across runs.
inline std::string decimal_string(const Rational& q) {
  char buf[64];
  const double d = to_double(q);
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

// Largest integer strictly below q (q > 0).
inline Integer largest_integer_below(const Rational& q) {
  Integer n = numerator(q) / denominator(q);  // truncation == floor for q > 0
  if (Rational(n) == q) --n;
  return n;
}

}  // namespace segguard
