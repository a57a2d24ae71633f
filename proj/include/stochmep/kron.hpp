#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "stochmep/linalg.hpp"
#include "stochmep/matrix.hpp"

namespace stochmep {

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
template <class T>
Matrix<T> kron_product(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) out(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    }
  return out;
}

/// Kronecker product of vectors y^1 (x) ... (x) y^n.
template <class T>
std::vector<T> kron_vector(const std::vector<std::vector<T>>& parts) {
  std::vector<T> out{T(1)};
  for (const auto& v : parts) {
    std::vector<T> next;
    next.reserve(out.size() * v.size());
    for (const auto& a : out)
      for (const auto& b : v) next.push_back(T(a * b));
    out = std::move(next);
  }
  return out;
}

/// Lexicographic rank of a 0-based multi-index: sum of i_l * C_l with
/// C_l the product of the later dimensions. Throws std::out_of_range.
std::size_t flat_index(std::span<const std::size_t> multi, std::span<const std::size_t> dims);
/// Inverse of flat_index.
std::vector<std::size_t> multi_index(std::size_t flat, std::span<const std::size_t> dims);
/// 1-based form: (i_1 - 1) C_1 + ... + (i_n - 1) C_n + 1 for 1 <= i_l <= p_l.
std::size_t canonical_index(std::span<const std::size_t> multi, std::span<const std::size_t> dims);

enum class KronMethod { leibniz, entrywise };

namespace detail {

template <class T>
void require_square_array(const std::vector<std::vector<Matrix<T>>>& arr) {
  for (const auto& row : arr) {
    if (row.size() != arr.size()) throw std::invalid_argument("Kronecker determinant needs an n x n array");
    for (const auto& m : row)
      if (m.rows() != row.front().rows() || m.cols() != row.front().cols())
        throw std::invalid_argument("Kronecker determinant: matrices in a row differ in size");
  }
}

}  // namespace detail

/// Kronecker determinant, expanded by columns:
/// sum over permutations s of sign(s) A^1_{s(1)} (x) ... (x) A^n_{s(n)},
/// where A^k_l is arr[k][l]. The entrywise method computes entry (r,s) as the
/// scalar determinant of [A^k_l(i_k, j_k)] with (i_k), (j_k) the multi-indices
/// of r and s; both methods agree.
template <class T>
Matrix<T> kron_det(const std::vector<std::vector<Matrix<T>>>& arr, KronMethod method = KronMethod::entrywise) {
  detail::require_square_array(arr);
  const std::size_t n = arr.size();
  if (n == 0) return Matrix<T>(1, 1, T(1));
  std::vector<std::size_t> pdims(n), qdims(n);
  for (std::size_t k = 0; k < n; ++k) {
    pdims[k] = arr[k].front().rows();
    qdims[k] = arr[k].front().cols();
  }
  const std::size_t P = std::accumulate(pdims.begin(), pdims.end(), std::size_t{1}, std::multiplies<>());
  const std::size_t Q = std::accumulate(qdims.begin(), qdims.end(), std::size_t{1}, std::multiplies<>());

  if (method == KronMethod::leibniz) {
    Matrix<T> out(P, Q);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      Matrix<T> term = arr[0][perm[0]];
      for (std::size_t k = 1; k < n; ++k) term = kron_product(term, arr[k][perm[k]]);
      if (permutation_sign(perm) > 0) {
        out += term;
      } else {
        out -= term;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }

  Matrix<T> out(P, Q);
  Matrix<T> sample(n, n);
  for (std::size_t r = 0; r < P; ++r) {
    const std::vector<std::size_t> ri = multi_index(r, pdims);
    for (std::size_t s = 0; s < Q; ++s) {
      const std::vector<std::size_t> si = multi_index(s, qdims);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) sample(k, l) = arr[k][l](ri[k], si[k]);
      out(r, s) = det(sample);
    }
  }
  return out;
}

}  // namespace stochmep
