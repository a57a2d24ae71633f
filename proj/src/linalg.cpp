#include "stochmep/linalg.hpp"

namespace stochmep {

PolyMatrix pencil(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("pencil: size mismatch");
  PolyMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = UniPoly(std::vector<Rational>{a(i, j), Rational(-b(i, j))});
  return out;
}

RationalMatrix evaluate(const PolyMatrix& m, const Rational& w) {
  return map_entries(m, [&](const UniPoly& p) { return p(w); });
}

PolyMatrix evaluate_lambda(const BiPolyMatrix& m, const Rational& lambda) {
  return map_entries(m, [&](const BiPoly& p) { return p.at_lambda(lambda); });
}

RationalMatrix evaluate_lambda(const PolyMatrix& m, const Rational& lambda) {
  return map_entries(m, [&](const UniPoly& p) { return p(lambda); });
}

std::vector<Rational> solve_linear(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.rows();
  if (!a.is_square() || b.size() != n) throw std::invalid_argument("solve_linear: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(a(p, k))) ++p;
    if (p == n) throw std::domain_error("solve_linear: singular matrix");
    if (p != k) {
      a.swap_rows(p, k);
      std::swap(b[p], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t k = n; k-- > 0;) {
    Rational s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

}  // namespace stochmep
