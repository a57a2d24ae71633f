#include "stochmep/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stochmep {

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(const Rational& c) {
  if (!stochmep::is_zero(c)) coeffs_.push_back(c);
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
  if (stochmep::is_zero(c)) return UniPoly();
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && stochmep::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double UniPoly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly out = *this;
  Rational lc = leading();
  for (auto& c : out.coeffs_) c /= lc;
  return out;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (stochmep::is_zero(coeffs_[i])) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  if (stochmep::is_zero(s)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
UniPoly operator-(UniPoly a) { return a *= Rational(-1); }

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  std::vector<Rational> quot(rem.size() - db, Rational(0));
  const Rational lead = bc.back();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational q = rem[k + db] / lead;
    quot[k] = q;
    if (is_zero(q)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * bc[j];
  }
  rem.resize(db);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UniPoly pow(const UniPoly& p, unsigned exponent) {
  UniPoly out(1), base = p;
  while (exponent) {
    if (exponent & 1u) out *= base;
    exponent >>= 1u;
    if (exponent) base *= base;
  }
  return out;
}

std::vector<std::pair<UniPoly, unsigned>> square_free_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square-free decomposition of the zero polynomial");
  std::vector<std::pair<UniPoly, unsigned>> out;
  if (p.degree() == 0) return out;
  const UniPoly f = p.monic();
  const UniPoly fp = f.derivative();
  UniPoly a = gcd(f, fp);
  UniPoly b = exact_div(f, a);
  UniPoly c = exact_div(fp, a);
  UniPoly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    UniPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

std::string to_string(const UniPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coefficients();
  for (std::size_t k = c.size(); k-- > 0;) {
    if (is_zero(c[k])) continue;
    Rational mag = abs(c[k]);
    bool neg = sgn(c[k]) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (k == 0 || !unit) os << to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << to_string(p); }

// ---------------------------------------------------------------------------
// BiPoly

BiPoly::BiPoly(const UniPoly& w_poly) {
  if (!w_poly.is_zero()) terms_.push_back(w_poly);
}

BiPoly::BiPoly(std::vector<UniPoly> by_lambda) : terms_(std::move(by_lambda)) { normalize(); }

BiPoly BiPoly::from_lambda(const UniPoly& lambda_poly) {
  std::vector<UniPoly> t;
  t.reserve(lambda_poly.coefficients().size());
  for (const auto& c : lambda_poly.coefficients()) t.emplace_back(c);
  return BiPoly(std::move(t));
}

void BiPoly::normalize() {
  while (!terms_.empty() && terms_.back().is_zero()) terms_.pop_back();
}

long BiPoly::w_degree() const noexcept {
  long d = -1;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

UniPoly BiPoly::at_lambda(const Rational& lambda) const {
  UniPoly acc;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    acc *= lambda;
    acc += *it;
  }
  return acc;
}

Rational BiPoly::operator()(const Rational& lambda, const Rational& w) const { return at_lambda(lambda)(w); }

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.terms_.size() > terms_.size()) terms_.resize(o.terms_.size());
  for (std::size_t i = 0; i < o.terms_.size(); ++i) terms_[i] += o.terms_[i];
  normalize();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (o.terms_.size() > terms_.size()) terms_.resize(o.terms_.size());
  for (std::size_t i = 0; i < o.terms_.size(); ++i) terms_[i] -= o.terms_[i];
  normalize();
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  if (is_zero() || o.is_zero()) {
    terms_.clear();
    return *this;
  }
  std::vector<UniPoly> out(terms_.size() + o.terms_.size() - 1);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.terms_.size(); ++j) {
      if (o.terms_[j].is_zero()) continue;
      out[i + j] += terms_[i] * o.terms_[j];
    }
  }
  terms_ = std::move(out);
  normalize();
  return *this;
}

BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
BiPoly operator-(BiPoly a) { return a *= BiPoly(-1); }

BiPoly exact_div(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw std::domain_error("bivariate division by zero");
  std::vector<UniPoly> rem = a.lambda_coefficients();
  const auto& bt = b.lambda_coefficients();
  const std::size_t db = bt.size() - 1;
  if (rem.size() < bt.size()) {
    if (!a.is_zero()) throw std::domain_error("bivariate division is not exact");
    return BiPoly();
  }
  std::vector<UniPoly> quot(rem.size() - db);
  for (std::size_t k = quot.size(); k-- > 0;) {
    if (rem[k + db].is_zero()) continue;
    UniPoly q = exact_div(rem[k + db], bt.back());
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * bt[j];
    quot[k] = std::move(q);
  }
  for (const auto& r : rem)
    if (!r.is_zero()) throw std::domain_error("bivariate division is not exact");
  return BiPoly(std::move(quot));
}

LambdaTerm lowest_lambda_term(const BiPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("lowest lambda term of the zero polynomial");
  const auto& t = p.lambda_coefficients();
  for (std::size_t m = 0; m < t.size(); ++m)
    if (!t[m].is_zero()) return {m, t[m]};
  throw std::logic_error("normalized nonzero BiPoly without a nonzero term");
}

std::string to_string(const BiPoly& p, const std::string& lambda_var, const std::string& w_var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& t = p.lambda_coefficients();
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (t[m].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(t[m], w_var) << ")";
    if (m > 0) os << "*" << lambda_var << (m > 1 ? "^" + std::to_string(m) : "");
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << to_string(p); }

}  // namespace stochmep
