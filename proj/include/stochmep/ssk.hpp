#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stochmep/matrix_game.hpp"
#include "stochmep/mep.hpp"
#include "stochmep/poly.hpp"
#include "stochmep/stochastic_game.hpp"

namespace stochmep {

/// Kernel tolerance for a value vector known to within epsilon:
/// 10 * epsilon * (1 + max |g|).
Rational kernel_tolerance(const StochasticGame& g, const Rational& epsilon);

/// The data array restricted, state by state, to one Shapley-Snow kernel of
/// the local game at (lambda, v).
struct ReducedArray {
  Rational lambda;
  std::vector<Rational> v;
  std::vector<KernelCertificate> kernels;  // per state, of the local game
  LambdaArray symbolic;                    // entries are polynomials in lambda
  RationalArray array;                     // symbolic evaluated at lambda
  RationalAux aux;                         // reduced auxiliary matrices at lambda
  /// 0-based rows and columns of the full auxiliary matrices that the reduced
  /// ones occupy (lexicographic products of the kernel index sets).
  std::vector<std::size_t> delta_rows;
  std::vector<std::size_t> delta_cols;

  /// Reduced auxiliary matrices with lambda left symbolic.
  LambdaAux symbolic_aux() const;
};

/// Thrown when some state has no kernel within the tolerance, which means v is
/// too far from the discounted values.
class KernelNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Restricts the data array to the given per-state kernels.
ReducedArray reduce_with_kernels(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                                 std::vector<KernelCertificate> kernels);

/// First kernel per state (matrix-game enumeration order).
ReducedArray reduce_array(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                          const Rational& tolerance);

/// One reduced array per combination of kernels. Throws std::length_error if
/// more than max_arrays combinations exist.
std::vector<ReducedArray> reduce_array_all(const StochasticGame& g, const Rational& lambda,
                                           const std::vector<Rational>& v, const Rational& tolerance,
                                           std::size_t max_arrays = 4096);

/// Re-certifies the stored kernel index sets against the local games at
/// another (lambda, v).
bool kernels_valid_at(const StochasticGame& g, const std::vector<KernelCertificate>& kernels, const Rational& lambda,
                      const std::vector<Rational>& v, const Rational& tolerance);

/// Rows and columns of a maximal nonvanishing minor of a pencil together with
/// its determinant, which is a nonzero polynomial in w.
struct CharPoly {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  UniPoly poly;
};

/// Determinant of a maximal nonvanishing minor of the reduced pencil
/// Delta'^k - w Delta'^0 at the lambda in use.
CharPoly char_poly_reduced(const ReducedArray& r, std::size_t k);

/// The same minor with lambda symbolic.
BiPoly char_poly_reduced_symbolic(const ReducedArray& r, std::size_t k);

/// Kernel of (-1)^n (Delta^k - v^k Delta^0) and the determinant of the pencil
/// restricted to it.
struct GlobalCharPoly {
  KernelCertificate kernel;
  UniPoly poly;
};

/// Tolerance used for the kernel search of the pencil game:
/// 10 * epsilon * (1 + max|Delta^k| + max|Delta^0|).
Rational pencil_kernel_tolerance(const RationalAux& aux, std::size_t k, const Rational& epsilon);

GlobalCharPoly char_poly_global(const RationalAux& aux, const std::vector<Rational>& v, std::size_t k,
                                const Rational& tolerance);
GlobalCharPoly char_poly_global(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                                std::size_t k, const Rational& epsilon);

/// det(Delta'^k - w Delta'^0) restricted to the given rows/cols, lambda symbolic.
BiPoly symbolic_minor(const LambdaAux& aux, std::size_t k, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols);

/// Thrown when an enumeration exceeds its cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of square sub-matrices of size 1..max_size of a rows x cols matrix.
double submatrix_count(std::size_t rows, std::size_t cols, std::size_t max_size);

/// Nonzero determinants of the square sub-matrices of Delta^k - w Delta^0 of
/// size at most degree_cap whose w-degree is at most degree_cap, without
/// duplicates, in order of first appearance (size, then rows, then columns).
std::vector<BiPoly> candidate_family(const LambdaAux& aux, std::size_t k, std::size_t degree_cap,
                                     double count_cap = 1e6);

/// Cofactor sum of Delta'^k - v^k Delta'^0. A nonzero value links the reduced
/// and global constructions.
Rational reduced_cofactor_sum(const ReducedArray& r, std::size_t k);

/// True when the pencil a - w b drops below its generic rank at some w in
/// [lo, hi]: the gcd of all maximal minors has a root there. Exact; throws
/// CapExceeded when more than max_minors minors would be needed.
bool rank_drop_within(const RationalMatrix& a, const RationalMatrix& b, const Rational& lo, const Rational& hi,
                      double max_minors = 2e4);

}  // namespace stochmep
