#include "stochmep/mep.hpp"

#include "stochmep/matrix_game.hpp"

namespace stochmep {

RationalAux evaluate_lambda(const LambdaAux& aux, const Rational& lambda) {
  RationalAux out;
  for (const auto& d : aux.deltas) out.deltas.push_back(evaluate_lambda(d, lambda));
  return out;
}

RationalMatrix signed_pencil_at(const RationalAux& aux, std::size_t k, const Rational& w) {
  const RationalMatrix& a = aux.state(k);
  const RationalMatrix& b = aux.delta0();
  const bool negate = aux.n() % 2 == 1;
  RationalMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) - w * b(i, j);
      if (negate) out(i, j) = -out(i, j);
    }
  return out;
}

std::vector<Rational> coupled_residual(const RationalArray& arr, const std::vector<Rational>& z) {
  arr.require_h1();
  if (z.size() != arr.n()) throw std::invalid_argument("coupled_residual: z has the wrong length");
  std::vector<Rational> out;
  for (std::size_t k = 0; k < arr.n(); ++k) {
    if (arr.row_rows(k) != arr.row_cols(k)) throw std::invalid_argument("coupled_residual: row matrices are not square");
    RationalMatrix m = arr(k, 0);
    for (std::size_t l = 1; l <= arr.n(); ++l) m += arr(k, l) * z[l - 1];
    out.push_back(det(m));
  }
  return out;
}

RankProfile pencil_rank_profile(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("pencil rank: size mismatch");
  RankProfile generic = rank_profile(pencil(a, b));
  // Fixed sample points; the generic rank is attained at all but finitely many w.
  static const Rational samples[] = {ratio(7, 13), ratio(-11, 17), ratio(101, 37),
                                     ratio(-313, 29), ratio(3, 1009), ratio(997, 5)};
  std::size_t best = 0, agree = 0;
  for (const auto& w : samples) {
    std::size_t r = rank(evaluate(pencil(a, b), w));
    if (r > generic.rank) throw std::logic_error("pencil rank: sampled rank exceeds generic rank");
    best = std::max(best, r);
    if (r == generic.rank && ++agree >= 3) break;
  }
  if (best != generic.rank) throw std::logic_error("pencil rank: sampled ranks disagree with elimination");
  return generic;
}

std::size_t pencil_max_rank(const RationalMatrix& a, const RationalMatrix& b) {
  return pencil_rank_profile(a, b).rank;
}

bool rank_drop_holds(const RationalMatrix& a, const RationalMatrix& b, const Rational& w0) {
  const std::size_t generic = pencil_max_rank(a, b);
  return rank(evaluate(pencil(a, b), w0)) < generic;
}

std::vector<std::vector<RootEnclosure>> mep_coordinate_roots(const RationalAux& aux, const Rational& precision) {
  const RationalMatrix& d0 = aux.delta0();
  if (!d0.is_square() || is_zero(det(d0))) throw SingularMep("Delta^0 is singular; use the rank-drop formulation");
  std::vector<std::vector<RootEnclosure>> out;
  for (std::size_t k = 0; k < aux.n(); ++k) {
    UniPoly p = det(pencil(aux.state(k), d0));
    Rational bound = cauchy_bound(p);
    out.push_back(real_roots(p, Rational(-bound), bound, precision));
  }
  return out;
}

std::vector<std::vector<RootEnclosure>> solve_nonsingular_mep(const RationalAux& aux, const Rational& precision) {
  auto coords = mep_coordinate_roots(aux, precision);
  std::vector<std::vector<RootEnclosure>> out{{}};
  for (const auto& roots : coords) {
    std::vector<std::vector<RootEnclosure>> next;
    for (const auto& partial : out)
      for (const auto& r : roots) {
        auto v = partial;
        v.push_back(r);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

Rational game_value_at(const RationalAux& aux, std::size_t k, const Rational& w) {
  return exact_value(signed_pencil_at(aux, k, w));
}

std::vector<ValueBracket> bracket_values(const RationalAux& aux, const Rational& g_lo, const Rational& g_hi,
                                         const Rational& width) {
  if (sgn(width) <= 0) throw std::invalid_argument("bracket_values: width must be positive");
  std::vector<ValueBracket> out;
  for (std::size_t k = 0; k < aux.n(); ++k) {
    ValueBracket b{g_lo, g_hi};
    if (is_zero(game_value_at(aux, k, b.lo))) {
      b.hi = b.lo;
    } else if (is_zero(game_value_at(aux, k, b.hi))) {
      b.lo = b.hi;
    }
    while (b.hi - b.lo > width) {
      Rational mid = (b.lo + b.hi) / 2;
      int s = sgn(game_value_at(aux, k, mid));
      if (s == 0) {
        b.lo = b.hi = mid;
      } else if (s > 0) {
        b.lo = mid;
      } else {
        b.hi = mid;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace stochmep
