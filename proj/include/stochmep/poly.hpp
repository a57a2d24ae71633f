#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "stochmep/rational.hpp"

namespace stochmep {

/// Univariate polynomial over the rationals. Coefficient i multiplies x^i;
/// trailing zeros are always stripped, so the zero polynomial has no coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(long c) : UniPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  UniPoly(const Rational& c);                // NOLINT(google-explicit-constructor)
  explicit UniPoly(std::vector<Rational> coeffs);

  /// c * x^degree
  static UniPoly monomial(const Rational& c, std::size_t degree);
  /// The indeterminate x.
  static UniPoly x() { return monomial(Rational(1), 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

UniPoly operator+(UniPoly a, const UniPoly& b);
UniPoly operator-(UniPoly a, const UniPoly& b);
UniPoly operator*(UniPoly a, const UniPoly& b);
UniPoly operator*(UniPoly a, const Rational& s);
UniPoly operator*(const Rational& s, UniPoly a);
UniPoly operator-(UniPoly a);

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Quotient a/b; throws std::domain_error when b does not divide a.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly pow(const UniPoly& p, unsigned exponent);

inline bool is_zero(const UniPoly& p) { return p.is_zero(); }

/// Yun's square-free decomposition: p = c * prod f_i^i with each f_i monic,
/// square-free and pairwise coprime. Returns (f_i, i) for non-constant f_i.
std::vector<std::pair<UniPoly, unsigned>> square_free_decomposition(const UniPoly& p);

std::string to_string(const UniPoly& p, const std::string& var = "w");
std::ostream& operator<<(std::ostream& os, const UniPoly& p);

/// Bivariate polynomial in (lambda, w), stored lambda-major: entry m is the
/// coefficient polynomial P_m(w) of lambda^m. Trailing zero entries are stripped.
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(long c) : BiPoly(UniPoly(c)) {}      // NOLINT(google-explicit-constructor)
  BiPoly(const Rational& c) : BiPoly(UniPoly(c)) {}  // NOLINT(google-explicit-constructor)
  /// A polynomial in w only (lambda-degree 0).
  BiPoly(const UniPoly& w_poly);  // NOLINT(google-explicit-constructor)
  explicit BiPoly(std::vector<UniPoly> by_lambda);

  /// Embeds a polynomial in lambda (constant in w).
  static BiPoly from_lambda(const UniPoly& lambda_poly);
  static BiPoly lambda() { return BiPoly(std::vector<UniPoly>{UniPoly(), UniPoly(1)}); }
  static BiPoly w() { return BiPoly(UniPoly::x()); }

  bool is_zero() const noexcept { return terms_.empty(); }
  long lambda_degree() const noexcept { return static_cast<long>(terms_.size()) - 1; }
  long w_degree() const noexcept;
  const std::vector<UniPoly>& lambda_coefficients() const noexcept { return terms_; }
  UniPoly coefficient(std::size_t m) const { return m < terms_.size() ? terms_[m] : UniPoly(); }

  /// Specializes lambda, leaving a polynomial in w.
  UniPoly at_lambda(const Rational& lambda) const;
  Rational operator()(const Rational& lambda, const Rational& w) const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  void normalize();
  std::vector<UniPoly> terms_;
};

BiPoly operator+(BiPoly a, const BiPoly& b);
BiPoly operator-(BiPoly a, const BiPoly& b);
BiPoly operator*(BiPoly a, const BiPoly& b);
BiPoly operator-(BiPoly a);

/// Exact quotient in Q[w][lambda]; throws std::domain_error when b does not divide a.
BiPoly exact_div(const BiPoly& a, const BiPoly& b);
inline bool is_zero(const BiPoly& p) { return p.is_zero(); }

/// Lowest nonvanishing lambda-order: p = lambda^s * q(w) + lambda^(s+1) * (...).
struct LambdaTerm {
  std::size_t order = 0;
  UniPoly coefficient;
};
LambdaTerm lowest_lambda_term(const BiPoly& p);

std::string to_string(const BiPoly& p, const std::string& lambda_var = "l", const std::string& w_var = "w");
std::ostream& operator<<(std::ostream& os, const BiPoly& p);

}  // namespace stochmep
