#pragma once

// Exact rationals (GMP) and conversions used across the polynomial code.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmax {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact: every finite double is a dyadic rational.
inline Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("exact_rational: non-finite value");
  return Rational(v);
}

inline double to_double(const Rational& q) { return q.get_d(); }

/**
 * Parses "p/q", "-0.999", "12" or "+3.25" without a floating intermediate.
 * Throws std::invalid_argument on malformed input or a zero denominator.
 */
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(num / den);
  }
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      fail();
    }
  }
  if (digits.empty()) fail();
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
  Rational q(negative ? Integer(-num) : num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace qmax
