#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "stochmep/linalg.hpp"
#include "stochmep/matrix.hpp"

namespace stochmep {

/// n rows of n+1 matrices M_0^k ... M_n^k. Row k corresponds to state k and
/// column l to the constant term (l = 0) or the unknown z^l.
template <class T>
class MatrixArray {
 public:
  MatrixArray() = default;
  explicit MatrixArray(std::vector<std::vector<Matrix<T>>> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != rows_.size() + 1) throw std::invalid_argument("matrix array row must hold n+1 matrices");
  }

  std::size_t n() const noexcept { return rows_.size(); }
  const Matrix<T>& operator()(std::size_t k, std::size_t l) const { return rows_.at(k).at(l); }
  Matrix<T>& operator()(std::size_t k, std::size_t l) { return rows_.at(k).at(l); }
  const std::vector<Matrix<T>>& row(std::size_t k) const { return rows_.at(k); }

  /// Equal matrix sizes within each row.
  bool satisfies_h1() const {
    for (const auto& r : rows_)
      for (const auto& m : r)
        if (m.rows() != r.front().rows() || m.cols() != r.front().cols()) return false;
    return true;
  }
  void require_h1() const {
    if (!satisfies_h1()) throw std::invalid_argument("matrix array violates equal sizes within a row");
  }

  std::size_t row_rows(std::size_t k) const { return rows_.at(k).front().rows(); }
  std::size_t row_cols(std::size_t k) const { return rows_.at(k).front().cols(); }

  /// The n x n array left after deleting column l.
  std::vector<std::vector<Matrix<T>>> without_column(std::size_t l) const {
    std::vector<std::vector<Matrix<T>>> out(n());
    for (std::size_t k = 0; k < n(); ++k)
      for (std::size_t c = 0; c <= n(); ++c)
        if (c != l) out[k].push_back(rows_[k][c]);
    return out;
  }

  template <class F>
  auto map(F&& f) const -> MatrixArray<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<std::vector<Matrix<U>>> out(n());
    for (std::size_t k = 0; k < n(); ++k)
      for (const auto& m : rows_[k]) out[k].push_back(map_entries(m, f));
    return MatrixArray<U>(std::move(out));
  }

  friend bool operator==(const MatrixArray& a, const MatrixArray& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<std::vector<Matrix<T>>> rows_;
};

/// Entries are polynomials in lambda.
using LambdaArray = MatrixArray<UniPoly>;
using RationalArray = MatrixArray<Rational>;

inline RationalArray evaluate_lambda(const LambdaArray& a, const Rational& lambda) {
  return a.map([&](const UniPoly& p) { return p(lambda); });
}

/// Sign conditions at a concrete lambda: M_k^k <= 0, M_l^k >= 0 for l != 0, k,
/// and sum over l >= 1 of M_l^k <= -lambda * U.
bool satisfies_h2(const RationalArray& a, const Rational& lambda);

}  // namespace stochmep
