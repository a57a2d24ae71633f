#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "stochmep/kron.hpp"
#include "stochmep/linalg.hpp"
#include "stochmep/matrix_array.hpp"
#include "stochmep/roots.hpp"

namespace stochmep {

/// Auxiliary matrices Delta^0 ... Delta^n of a matrix array. Delta^l is indexed
/// by l = 0 (the determinant of the unknown columns) and l = k + 1 for the
/// 0-based state k.
template <class T>
struct AuxMatrices {
  std::vector<Matrix<T>> deltas;

  std::size_t n() const { return deltas.size() - 1; }
  const Matrix<T>& operator[](std::size_t l) const { return deltas.at(l); }
  const Matrix<T>& delta0() const { return deltas.at(0); }
  /// Delta for the 0-based state k.
  const Matrix<T>& state(std::size_t k) const { return deltas.at(k + 1); }

  friend bool operator==(const AuxMatrices& a, const AuxMatrices& b) { return a.deltas == b.deltas; }
};

using RationalAux = AuxMatrices<Rational>;
using LambdaAux = AuxMatrices<UniPoly>;

/// Delta^l = (-1)^l det_kron(array with column l deleted).
template <class T>
AuxMatrices<T> aux_matrices(const MatrixArray<T>& arr, KronMethod method = KronMethod::entrywise) {
  arr.require_h1();
  AuxMatrices<T> out;
  for (std::size_t l = 0; l <= arr.n(); ++l) {
    Matrix<T> d = kron_det(arr.without_column(l), method);
    if (l % 2 == 1) d = -d;
    out.deltas.push_back(std::move(d));
  }
  return out;
}

RationalAux evaluate_lambda(const LambdaAux& aux, const Rational& lambda);

/// (-1)^n (Delta^{k+1} - w Delta^0) for the 0-based state k.
RationalMatrix signed_pencil_at(const RationalAux& aux, std::size_t k, const Rational& w);

/// Coordinate k is det(M_0^k + sum_l z^l M_l^k). Requires square rows.
std::vector<Rational> coupled_residual(const RationalArray& arr, const std::vector<Rational>& z);

/// Generic rank of a - w b over the field of rational functions in w, with the
/// pivot rows/columns of a nonvanishing maximal minor. The result is checked
/// against the rank at three fixed rational sample points.
RankProfile pencil_rank_profile(const RationalMatrix& a, const RationalMatrix& b);
std::size_t pencil_max_rank(const RationalMatrix& a, const RationalMatrix& b);

/// rank(a - w0 b) < generic rank, computed exactly.
bool rank_drop_holds(const RationalMatrix& a, const RationalMatrix& b, const Rational& w0);

class SingularMep : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Real solutions of the uncoupled system det(Delta^k - z^k Delta^0) = 0 when
/// Delta^0 is invertible: the Cartesian product of the per-coordinate real
/// root sets. Throws SingularMep when Delta^0 is singular.
std::vector<std::vector<RootEnclosure>> solve_nonsingular_mep(const RationalAux& aux, const Rational& precision);
/// Per-coordinate real root sets (the factors of the product above).
std::vector<std::vector<RootEnclosure>> mep_coordinate_roots(const RationalAux& aux, const Rational& precision);

/// val((-1)^n (Delta^{k+1} - w Delta^0)), exactly. Strictly decreasing in w
/// with its zero at the discounted value of state k.
Rational game_value_at(const RationalAux& aux, std::size_t k, const Rational& w);

/// Exact bracket lo < v^k < hi (or lo == hi == v^k) of width <= width for each
/// state, by bisection on the sign of game_value_at inside [g_lo, g_hi].
struct ValueBracket {
  Rational lo;
  Rational hi;
};
std::vector<ValueBracket> bracket_values(const RationalAux& aux, const Rational& g_lo, const Rational& g_hi,
                                         const Rational& width);

}  // namespace stochmep
