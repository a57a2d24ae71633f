#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace stochmep {

/// Arbitrary-precision rational. GMP keeps every value in lowest terms with a
/// positive denominator after each arithmetic operation.
using Rational = mpq_class;

/// num/den in canonical form (GMP's two-argument constructor does not reduce).
inline Rational ratio(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", "p", or an exact decimal such as "-0.125" or "1e-9".
/// Throws ParseError on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Canonical reduced form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Exact conversion of a finite double.
inline Rational from_double(double d) { return Rational(d); }

inline Rational abs(const Rational& r) { return Rational(::abs(r)); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational exact_div(const Rational& a, const Rational& b) {
  if (is_zero(b)) throw std::domain_error("division by zero rational");
  return Rational(a / b);
}

/// Rational power with a nonnegative exponent.
Rational pow(const Rational& base, unsigned exponent);

/// Decimal rendering with `digits` significant digits, for human-readable output only.
std::string to_decimal(const Rational& r, int digits = 17);

}  // namespace stochmep
