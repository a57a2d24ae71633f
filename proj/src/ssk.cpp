#include "stochmep/ssk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "stochmep/kron.hpp"
#include "stochmep/roots.hpp"

namespace stochmep {

namespace {

Rational max_abs(const RationalMatrix& m) {
  Rational out(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (abs(m(i, j)) > out) out = abs(m(i, j));
  return out;
}

// Advances a strictly increasing k-subset of {0..n-1}; false after the last.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  return std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1));
}

// Flat indices, in the full dimensions, of the lexicographic product of the
// per-state index sets.
std::vector<std::size_t> product_indices(const std::vector<std::vector<std::size_t>>& sets,
                                         const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> sub_dims;
  for (const auto& s : sets) sub_dims.push_back(s.size());
  std::size_t total = 1;
  for (auto d : sub_dims) total *= d;
  std::vector<std::size_t> out;
  out.reserve(total);
  std::vector<std::size_t> full(sets.size());
  for (std::size_t f = 0; f < total; ++f) {
    auto m = multi_index(f, sub_dims);
    for (std::size_t k = 0; k < sets.size(); ++k) full[k] = sets[k][m[k]];
    out.push_back(flat_index(full, dims));
  }
  return out;
}

}  // namespace

Rational kernel_tolerance(const StochasticGame& g, const Rational& epsilon) {
  Rational norm(0);
  for (std::size_t k = 0; k < g.num_states(); ++k) norm = std::max(norm, max_abs(g.state(k).payoff));
  return Rational(10 * epsilon * (1 + norm));
}

LambdaAux ReducedArray::symbolic_aux() const { return aux_matrices(symbolic); }

ReducedArray reduce_with_kernels(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                                 std::vector<KernelCertificate> kernels) {
  const std::size_t n = g.num_states();
  if (kernels.size() != n) throw std::invalid_argument("reduce: one kernel per state is required");
  if (v.size() != n) throw std::invalid_argument("reduce: value vector has the wrong length");
  LambdaArray full = data_array(g);
  std::vector<std::vector<PolyMatrix>> rows(n);
  std::vector<std::vector<std::size_t>> row_sets, col_sets;
  std::vector<std::size_t> pdims, qdims;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = kernels[k];
    if (c.rows.empty() || c.rows.size() != c.cols.size())
      throw std::invalid_argument("reduce: kernel index sets must be nonempty and square");
    for (std::size_t l = 0; l <= n; ++l)
      rows[k].push_back(submatrix(full(k, l), std::span<const std::size_t>(c.rows), std::span<const std::size_t>(c.cols)));
    row_sets.push_back(c.rows);
    col_sets.push_back(c.cols);
    pdims.push_back(g.rows(k));
    qdims.push_back(g.cols(k));
  }
  ReducedArray r;
  r.lambda = lambda;
  r.v = v;
  r.kernels = std::move(kernels);
  r.symbolic = LambdaArray(std::move(rows));
  r.array = evaluate_lambda(r.symbolic, lambda);
  r.aux = aux_matrices(r.array);
  r.delta_rows = product_indices(row_sets, pdims);
  r.delta_cols = product_indices(col_sets, qdims);
  return r;
}

ReducedArray reduce_array(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                          const Rational& tolerance) {
  require_discount(lambda);
  std::vector<KernelCertificate> kernels;
  for (std::size_t k = 0; k < g.num_states(); ++k) {
    try {
      kernels.push_back(find_kernel(local_game(g, lambda, v, k), tolerance));
    } catch (const NoKernel&) {
      throw KernelNotFound("no Shapley-Snow kernel within tolerance in state " + g.state(k).name +
                           "; the value approximation is too coarse");
    }
  }
  return reduce_with_kernels(g, lambda, v, std::move(kernels));
}

std::vector<ReducedArray> reduce_array_all(const StochasticGame& g, const Rational& lambda,
                                           const std::vector<Rational>& v, const Rational& tolerance,
                                           std::size_t max_arrays) {
  require_discount(lambda);
  std::vector<std::vector<KernelCertificate>> per_state;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < g.num_states(); ++k) {
    KernelOptions opt;
    opt.tolerance = tolerance;
    per_state.push_back(enumerate_kernels(local_game(g, lambda, v, k), opt));
    if (per_state.back().empty())
      throw KernelNotFound("no Shapley-Snow kernel within tolerance in state " + g.state(k).name);
    combos *= per_state.back().size();
    if (combos > max_arrays) throw std::length_error("reduce_array_all: too many kernel combinations");
  }
  std::vector<ReducedArray> out;
  std::vector<std::size_t> choice(per_state.size(), 0);
  while (true) {
    std::vector<KernelCertificate> ks;
    for (std::size_t k = 0; k < per_state.size(); ++k) ks.push_back(per_state[k][choice[k]]);
    out.push_back(reduce_with_kernels(g, lambda, v, std::move(ks)));
    std::size_t k = per_state.size();
    while (k-- > 0) {
      if (++choice[k] < per_state[k].size()) break;
      choice[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

bool kernels_valid_at(const StochasticGame& g, const std::vector<KernelCertificate>& kernels, const Rational& lambda,
                      const std::vector<Rational>& v, const Rational& tolerance) {
  if (kernels.size() != g.num_states()) throw std::invalid_argument("kernels_valid_at: one kernel per state");
  for (std::size_t k = 0; k < kernels.size(); ++k)
    if (!certify_subgame(local_game(g, lambda, v, k), kernels[k].rows, kernels[k].cols, tolerance)) return false;
  return true;
}

CharPoly char_poly_reduced(const ReducedArray& r, std::size_t k) {
  const RationalMatrix& a = r.aux.state(k);
  const RationalMatrix& b = r.aux.delta0();
  RankProfile prof = pencil_rank_profile(a, b);
  if (prof.rank == 0) throw std::logic_error("char_poly_reduced: the reduced pencil vanishes identically");
  PolyMatrix sub = submatrix(pencil(a, b), std::span<const std::size_t>(prof.rows), std::span<const std::size_t>(prof.cols));
  return CharPoly{prof.rows, prof.cols, det(sub)};
}

BiPoly symbolic_minor(const LambdaAux& aux, std::size_t k, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  const PolyMatrix& a = aux.state(k);
  const PolyMatrix& b = aux.delta0();
  BiPolyMatrix m(rows.size(), cols.size());
  const BiPoly w = BiPoly::w();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = BiPoly::from_lambda(a(rows[i], cols[j])) - w * BiPoly::from_lambda(b(rows[i], cols[j]));
  return det(m);
}

BiPoly char_poly_reduced_symbolic(const ReducedArray& r, std::size_t k) {
  CharPoly cp = char_poly_reduced(r, k);
  return symbolic_minor(r.symbolic_aux(), k, cp.rows, cp.cols);
}

Rational pencil_kernel_tolerance(const RationalAux& aux, std::size_t k, const Rational& epsilon) {
  return Rational(10 * epsilon * (1 + max_abs(aux.state(k)) + max_abs(aux.delta0())));
}

GlobalCharPoly char_poly_global(const RationalAux& aux, const std::vector<Rational>& v, std::size_t k,
                                const Rational& tolerance) {
  if (v.size() != aux.n()) throw std::invalid_argument("char_poly_global: value vector has the wrong length");
  KernelCertificate kernel;
  try {
    kernel = find_kernel(signed_pencil_at(aux, k, v.at(k)), tolerance);
  } catch (const NoKernel&) {
    throw KernelNotFound("no kernel of the auxiliary pencil game within tolerance");
  }
  const std::span<const std::size_t> rows(kernel.rows), cols(kernel.cols);
  UniPoly p = det(pencil(submatrix(aux.state(k), rows, cols), submatrix(aux.delta0(), rows, cols)));
  return GlobalCharPoly{std::move(kernel), std::move(p)};
}

GlobalCharPoly char_poly_global(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& v,
                                std::size_t k, const Rational& epsilon) {
  RationalAux aux = aux_matrices(evaluate_lambda(data_array(g), lambda));
  return char_poly_global(aux, v, k, pencil_kernel_tolerance(aux, k, epsilon));
}

double submatrix_count(std::size_t rows, std::size_t cols, std::size_t max_size) {
  double total = 0;
  for (std::size_t s = 1; s <= std::min({rows, cols, max_size}); ++s) total += binomial(rows, s) * binomial(cols, s);
  return total;
}

std::vector<BiPoly> candidate_family(const LambdaAux& aux, std::size_t k, std::size_t degree_cap, double count_cap) {
  const PolyMatrix& a = aux.state(k);
  const PolyMatrix& b = aux.delta0();
  const std::size_t P = a.rows(), Q = a.cols();
  const double count = submatrix_count(P, Q, degree_cap);
  if (count > count_cap)
    throw CapExceeded("candidate family needs " + std::to_string(static_cast<long long>(count)) +
                      " sub-matrices, above the cap of " + std::to_string(static_cast<long long>(count_cap)));
  BiPolyMatrix pen(P, Q);
  const BiPoly w = BiPoly::w();
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = 0; j < Q; ++j) pen(i, j) = BiPoly::from_lambda(a(i, j)) - w * BiPoly::from_lambda(b(i, j));

  std::vector<BiPoly> out;
  std::unordered_set<std::string> seen;
  for (std::size_t s = 1; s <= std::min({P, Q, degree_cap}); ++s) {
    auto rows = first_combination(s);
    do {
      auto cols = first_combination(s);
      do {
        BiPoly d = det(submatrix(pen, std::span<const std::size_t>(rows), std::span<const std::size_t>(cols)));
        if (d.is_zero() || d.w_degree() > static_cast<long>(degree_cap)) continue;
        if (seen.insert(to_string(d)).second) out.push_back(std::move(d));
      } while (next_combination(cols, Q));
    } while (next_combination(rows, P));
  }
  return out;
}

Rational reduced_cofactor_sum(const ReducedArray& r, std::size_t k) {
  RationalMatrix m = r.aux.state(k) - r.aux.delta0() * r.v.at(k);
  return sum_entries(cofactor_matrix(m));
}

bool rank_drop_within(const RationalMatrix& a, const RationalMatrix& b, const Rational& lo, const Rational& hi,
                      double max_minors) {
  if (lo > hi) throw std::invalid_argument("rank_drop_within: empty interval");
  RankProfile prof = pencil_rank_profile(a, b);
  if (prof.rank == 0) return false;
  PolyMatrix pen = pencil(a, b);
  const std::size_t r = prof.rank;
  UniPoly g = det(submatrix(pen, std::span<const std::size_t>(prof.rows), std::span<const std::size_t>(prof.cols)));
  const bool single = r == pen.rows() && r == pen.cols();
  if (!single) {
    const double count = binomial(pen.rows(), r) * binomial(pen.cols(), r);
    if (count > max_minors) throw CapExceeded("rank_drop_within: too many maximal minors");
    auto rows = first_combination(r);
    do {
      auto cols = first_combination(r);
      do {
        if (g.degree() <= 0) return false;
        UniPoly d = det(submatrix(pen, std::span<const std::size_t>(rows), std::span<const std::size_t>(cols)));
        if (!d.is_zero()) g = gcd(g, d);
      } while (next_combination(cols, pen.cols()));
    } while (next_combination(rows, pen.rows()));
  }
  if (g.degree() <= 0) return false;
  if (lo == hi) return is_zero(g(lo));
  return !real_roots(g, lo, hi, Rational(hi - lo)).empty();
}

}  // namespace stochmep
