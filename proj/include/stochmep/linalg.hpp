#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stochmep/matrix.hpp"
#include "stochmep/poly.hpp"
#include "stochmep/rational.hpp"

// Exact linear algebra over the rings used by the pipeline: Rational, UniPoly
// (in w) and BiPoly (in lambda, w). Each ring provides T(long), is_zero(T) and
// exact_div(T, T).

namespace stochmep {

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<UniPoly>;
using BiPolyMatrix = Matrix<BiPoly>;

namespace detail {

inline void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw std::invalid_argument(std::string(what) + ": matrix is not square");
}

/// Degree used to rank pivot candidates; smaller is cheaper to divide by.
inline long pivot_weight(const Rational&) { return 0; }
inline long pivot_weight(const UniPoly& p) { return p.degree(); }
inline long pivot_weight(const BiPoly& p) { return p.lambda_degree() + p.w_degree(); }

}  // namespace detail

/// Sign of a permutation given as an image vector, by counting transpositions.
inline int permutation_sign(std::vector<std::size_t> perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  }
  return sign;
}

/// Leibniz expansion over all permutations. Used directly for tiny sizes and
/// as an independent oracle for Bareiss elimination.
template <class T>
T det_leibniz(const Matrix<T>& m) {
  detail::require_square(m.rows(), m.cols(), "det_leibniz");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  T total(0);
  do {
    T term(1);
    for (std::size_t i = 0; i < n && !is_zero(term); ++i) term *= m(i, perm[i]);
    if (is_zero(term)) continue;
    if (permutation_sign(perm) > 0) {
      total += term;
    } else {
      total -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Bareiss fraction-free elimination with row pivoting. Every division is exact
/// in the underlying ring, so no fractions of ring elements ever appear.
template <class T>
T det_bareiss(Matrix<T> m) {
  detail::require_square(m.rows(), m.cols(), "det_bareiss");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  int sign = 1;
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      if (best == n || detail::pivot_weight(m(i, k)) < detail::pivot_weight(m(best, k))) best = i;
    }
    if (best == n) return T(0);
    if (best != k) {
      m.swap_rows(best, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = exact_div(num, prev);
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  if (sign < 0) d = T(T(0) - d);
  return d;
}

/// Exact determinant: Leibniz for size <= 4, Bareiss above.
template <class T>
T det(const Matrix<T>& m) {
  detail::require_square(m.rows(), m.cols(), "det");
  if (m.rows() <= 4) return det_leibniz(m);
  return det_bareiss(m);
}

/// Deletes one row and one column.
template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t row, std::size_t col) {
  Matrix<T> out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

/// Cofactor matrix: entry (i,j) is (-1)^(i+j) times the (i,j) minor, so that
/// m * transpose(co(m)) = det(m) * Id. A 1x1 matrix has cofactor matrix [1].
template <class T>
Matrix<T> cofactor_matrix(const Matrix<T>& m) {
  detail::require_square(m.rows(), m.cols(), "cofactor_matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw std::invalid_argument("cofactor_matrix: empty matrix");
  if (n == 1) return Matrix<T>(1, 1, T(1));
  Matrix<T> co(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T d = det(minor_matrix(m, i, j));
      if ((i + j) % 2 != 0) d = T(T(0) - d);
      co(i, j) = std::move(d);
    }
  return co;
}

/// Result of fraction-free elimination with full pivoting: the rank and the
/// original indices of the pivot rows/columns. The submatrix on those indices
/// has a nonzero determinant.
struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

template <class T>
RankProfile rank_profile(Matrix<T> m) {
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<std::size_t> row_of(r), col_of(c);
  std::iota(row_of.begin(), row_of.end(), std::size_t{0});
  std::iota(col_of.begin(), col_of.end(), std::size_t{0});
  T prev(1);
  std::size_t k = 0;
  for (; k < std::min(r, c); ++k) {
    std::size_t bi = r, bj = c;
    for (std::size_t i = k; i < r; ++i)
      for (std::size_t j = k; j < c; ++j) {
        if (is_zero(m(i, j))) continue;
        if (bi == r || detail::pivot_weight(m(i, j)) < detail::pivot_weight(m(bi, bj))) {
          bi = i;
          bj = j;
        }
      }
    if (bi == r) break;
    m.swap_rows(bi, k);
    std::swap(row_of[bi], row_of[k]);
    m.swap_cols(bj, k);
    std::swap(col_of[bj], col_of[k]);
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < c; ++j) {
        T num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = exact_div(num, prev);
      }
      m(i, k) = T(0);
    }
    prev = m(k, k);
  }
  RankProfile out;
  out.rank = k;
  out.rows.assign(row_of.begin(), row_of.begin() + static_cast<std::ptrdiff_t>(k));
  out.cols.assign(col_of.begin(), col_of.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(out.rows.begin(), out.rows.end());
  std::sort(out.cols.begin(), out.cols.end());
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rank_profile(m).rank;
}

/// The pencil a - w*b as a matrix of polynomials in w.
PolyMatrix pencil(const RationalMatrix& a, const RationalMatrix& b);
/// Specializes a matrix of polynomials in w at a rational point.
RationalMatrix evaluate(const PolyMatrix& m, const Rational& w);
/// Specializes a matrix of BiPoly at a rational lambda.
PolyMatrix evaluate_lambda(const BiPolyMatrix& m, const Rational& lambda);
/// Specializes a matrix of polynomials in lambda at a rational point.
RationalMatrix evaluate_lambda(const PolyMatrix& m, const Rational& lambda);

/// Exact solution of a square nonsingular rational system; throws
/// std::domain_error when the matrix is singular.
std::vector<Rational> solve_linear(RationalMatrix a, std::vector<Rational> b);

}  // namespace stochmep
