#include "stochmep/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace stochmep {

namespace {

bool positive(const Rational& x, const Rational&) { return sgn(x) > 0; }
bool positive(double x, double eps) { return x > eps; }

template <class T>
struct LpOutcome {
  std::vector<T> y;  // primal, per column
  std::vector<T> u;  // dual, per row
  std::vector<std::size_t> basis;
  T total;
};

// Maximizes sum(y) subject to a*y <= 1, y >= 0, for a strictly positive matrix a.
// Dense tableau, Bland's rule for entering and leaving variables.
template <class T>
LpOutcome<T> simplex_max(const Matrix<T>& a, const T& eps) {
  const std::size_t p = a.rows(), q = a.cols(), width = q + p + 1, rhs = q + p;
  Matrix<T> tab(p, width, T(0));
  std::vector<T> obj(width, T(0));
  std::vector<std::size_t> basis(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) tab(i, j) = a(i, j);
    tab(i, q + i) = T(1);
    tab(i, rhs) = T(1);
    basis[i] = q + i;
  }
  for (std::size_t j = 0; j < q; ++j) obj[j] = T(1);

  while (true) {
    std::size_t e = width;
    for (std::size_t j = 0; j < rhs; ++j)
      if (positive(obj[j], eps)) {
        e = j;
        break;
      }
    if (e == width) break;
    std::size_t r = p;
    T best_ratio(0);
    for (std::size_t i = 0; i < p; ++i) {
      if (!positive(tab(i, e), eps)) continue;
      T ratio = tab(i, rhs) / tab(i, e);
      if (r == p || ratio < best_ratio || (!(best_ratio < ratio) && basis[i] < basis[r])) {
        r = i;
        best_ratio = ratio;
      }
    }
    if (r == p) throw std::logic_error("simplex: unbounded program for a positive matrix");
    T piv = tab(r, e);
    for (std::size_t j = 0; j < width; ++j) tab(r, j) /= piv;
    for (std::size_t i = 0; i < p; ++i) {
      if (i == r) continue;
      T f = tab(i, e);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < width; ++j) tab(i, j) -= f * tab(r, j);
    }
    T f = obj[e];
    for (std::size_t j = 0; j < width; ++j) obj[j] -= f * tab(r, j);
    basis[r] = e;
  }

  LpOutcome<T> out;
  out.y.assign(q, T(0));
  out.u.assign(p, T(0));
  for (std::size_t i = 0; i < p; ++i)
    if (basis[i] < q) out.y[basis[i]] = tab(i, rhs);
  for (std::size_t i = 0; i < p; ++i) out.u[i] = T(0) - obj[q + i];
  out.basis = basis;
  out.total = T(0) - obj[rhs];
  return out;
}

template <class T>
T min_entry(const Matrix<T>& g) {
  T m = g(0, 0);
  for (const auto& e : g.entries())
    if (e < m) m = e;
  return m;
}

void require_nonempty(const MatrixGame& g) {
  if (g.rows() == 0 || g.cols() == 0) throw std::invalid_argument("matrix game must have at least one row and column");
}

// Square index sets read off an optimal basis: basic columns, and rows whose
// slack left the basis. The basis matrix restricted to them is invertible.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> basis_kernel(const std::vector<std::size_t>& basis,
                                                                           std::size_t p, std::size_t q) {
  std::vector<bool> slack_basic(p, false);
  std::vector<std::size_t> cols;
  for (std::size_t b : basis) {
    if (b < q) {
      cols.push_back(b);
    } else {
      slack_basic[b - q] = true;
    }
  }
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < p; ++i)
    if (!slack_basic[i]) rows.push_back(i);
  std::sort(cols.begin(), cols.end());
  return {rows, cols};
}

LpOutcome<Rational> exact_lp(const MatrixGame& g, Rational& shift) {
  shift = Rational(1) - min_entry(g);
  Matrix<Rational> a = g;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += shift;
  return simplex_max<Rational>(a, Rational(0));
}

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

void check_indices(const MatrixGame& g, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  for (std::size_t r : rows)
    if (r >= g.rows()) throw std::out_of_range("kernel row index out of range");
  for (std::size_t c : cols)
    if (c >= g.cols()) throw std::out_of_range("kernel column index out of range");
}

bool strictly_increasing(const std::vector<std::size_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

constexpr double kEnumerationBudget = 4096;

}  // namespace

MixedStrategy KernelCertificate::full_x(std::size_t p) const {
  MixedStrategy out(p, Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i) out.at(rows[i]) = x[i];
  return out;
}

MixedStrategy KernelCertificate::full_y(std::size_t q) const {
  MixedStrategy out(q, Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j) out.at(cols[j]) = y[j];
  return out;
}

Matrix<double> to_double(const RationalMatrix& m) {
  return map_entries(m, [](const Rational& r) { return r.get_d(); });
}

NumericGameSolution solve_numeric(const Matrix<double>& g) {
  if (g.rows() == 0 || g.cols() == 0) throw std::invalid_argument("matrix game must have at least one row and column");
  const double shift = 1.0 - min_entry(g);
  Matrix<double> a = g;
  double scale = 1.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      a(i, j) += shift;
      scale = std::max(scale, a(i, j));
    }
  auto lp = simplex_max<double>(a, 1e-12 * scale);
  NumericGameSolution out;
  out.value = 1.0 / lp.total - shift;
  out.x.resize(g.rows());
  out.y.resize(g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i) out.x[i] = std::max(0.0, lp.u[i] / lp.total);
  for (std::size_t j = 0; j < g.cols(); ++j) out.y[j] = std::max(0.0, lp.y[j] / lp.total);
  return out;
}

Rational exact_value(const MatrixGame& g) {
  require_nonempty(g);
  Rational shift;
  auto lp = exact_lp(g, shift);
  return Rational(1 / lp.total - shift);
}

GameSolution game_value(const MatrixGame& g, SolveMode mode) {
  require_nonempty(g);
  if (mode == SolveMode::numeric) {
    auto s = solve_numeric(to_double(g));
    GameSolution out{from_double(s.value), {}, {}};
    for (double v : s.x) out.x.push_back(from_double(v));
    for (double v : s.y) out.y.push_back(from_double(v));
    return out;
  }
  KernelCertificate k = find_kernel(g);
  return GameSolution{k.value, k.full_x(g.rows()), k.full_y(g.cols())};
}

std::optional<KernelCertificate> certify_subgame(const MatrixGame& g, const std::vector<std::size_t>& rows,
                                                 const std::vector<std::size_t>& cols, const Rational& tolerance) {
  check_indices(g, rows, cols);
  if (rows.empty() || rows.size() != cols.size())
    throw std::invalid_argument("kernel index sets must be nonempty and of equal size");
  if (!strictly_increasing(rows) || !strictly_increasing(cols))
    throw std::invalid_argument("kernel index sets must be strictly increasing");
  const std::size_t s = rows.size();
  RationalMatrix sub = submatrix(g, std::span<const std::size_t>(rows), std::span<const std::size_t>(cols));

  // Translation by c*U leaves the kernel strategies and the cofactor sum S
  // unchanged and moves the determinant to det + c*S, so one shift makes the
  // system invertible whenever S != 0.
  Rational d = det(sub);
  Rational c(0);
  Rational dshift = d;
  RationalMatrix m = sub;
  if (is_zero(d)) {
    c = 1;
    for (auto i = 0u; i < s; ++i)
      for (auto j = 0u; j < s; ++j) m(i, j) += c;
    dshift = det(m);
    if (is_zero(dshift)) return std::nullopt;
  }
  std::vector<Rational> one(s, Rational(1));
  std::vector<Rational> a = solve_linear(m, one);
  std::vector<Rational> b = solve_linear(transpose(m), one);
  Rational sigma(0);
  for (const auto& e : a) sigma += e;
  if (is_zero(sigma)) return std::nullopt;

  KernelCertificate cert;
  cert.rows = rows;
  cert.cols = cols;
  cert.cofactor_sum = dshift * sigma;
  cert.value = d / cert.cofactor_sum;
  for (auto& e : b) cert.x.push_back(Rational(e / sigma));
  for (auto& e : a) cert.y.push_back(Rational(e / sigma));

  const Rational neg_tol = -tolerance;
  for (const auto& e : cert.x)
    if (e < neg_tol) return std::nullopt;
  for (const auto& e : cert.y)
    if (e < neg_tol) return std::nullopt;

  const Rational lo = cert.value - tolerance, hi = cert.value + tolerance;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Rational s_col(0);
    for (std::size_t i = 0; i < s; ++i) s_col += cert.x[i] * g(rows[i], j);
    if (s_col < lo) return std::nullopt;
  }
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational s_row(0);
    for (std::size_t j = 0; j < s; ++j) s_row += g(i, cols[j]) * cert.y[j];
    if (s_row > hi) return std::nullopt;
  }
  return cert;
}

double enumeration_size(std::size_t p, std::size_t q, std::size_t size_cap) {
  std::size_t top = std::min(p, q);
  if (size_cap != 0) top = std::min(top, size_cap);
  double total = 0.0;
  double cp = 1.0, cq = 1.0;
  for (std::size_t s = 1; s <= top; ++s) {
    cp = cp * static_cast<double>(p - s + 1) / static_cast<double>(s);
    cq = cq * static_cast<double>(q - s + 1) / static_cast<double>(s);
    total += cp * cq;
  }
  return total;
}

std::vector<KernelCertificate> enumerate_kernels(const MatrixGame& g, const KernelOptions& options) {
  require_nonempty(g);
  const std::size_t p = g.rows(), q = g.cols();
  if (p > 8 || q > 8)
    std::clog << "warning: enumerating kernels of a " << p << "x" << q << " game (" << enumeration_size(p, q, options.size_cap)
              << " sub-games)\n";
  std::size_t top = std::min(p, q);
  if (options.size_cap != 0) top = std::min(top, options.size_cap);
  std::vector<KernelCertificate> out;
  for (std::size_t s = 1; s <= top; ++s) {
    std::vector<std::size_t> rows(s);
    for (std::size_t i = 0; i < s; ++i) rows[i] = i;
    do {
      std::vector<std::size_t> cols(s);
      for (std::size_t i = 0; i < s; ++i) cols[i] = i;
      do {
        if (auto c = certify_subgame(g, rows, cols, options.tolerance)) {
          out.push_back(std::move(*c));
          if (options.max_results != 0 && out.size() >= options.max_results) return out;
        }
      } while (next_combination(cols, q));
    } while (next_combination(rows, p));
  }
  return out;
}

KernelCertificate find_kernel(const MatrixGame& g, const Rational& tolerance) {
  require_nonempty(g);
  const std::size_t p = g.rows(), q = g.cols();
  KernelOptions first;
  first.tolerance = tolerance;
  first.max_results = 1;
  if (enumeration_size(p, q) <= kEnumerationBudget) {
    auto ks = enumerate_kernels(g, first);
    if (ks.empty()) throw NoKernel("no Shapley-Snow kernel within tolerance");
    return ks.front();
  }
  // Large game: read a candidate off an optimal basis, floating point first.
  {
    Matrix<double> gd = to_double(g);
    const double shift = 1.0 - min_entry(gd);
    double scale = 1.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        gd(i, j) += shift;
        scale = std::max(scale, gd(i, j));
      }
    auto lp = simplex_max<double>(gd, 1e-12 * scale);
    auto [rows, cols] = basis_kernel(lp.basis, p, q);
    if (!rows.empty() && rows.size() == cols.size())
      if (auto c = certify_subgame(g, rows, cols, tolerance)) return *c;
  }
  Rational shift;
  auto lp = exact_lp(g, shift);
  auto [rows, cols] = basis_kernel(lp.basis, p, q);
  if (!rows.empty() && rows.size() == cols.size())
    if (auto c = certify_subgame(g, rows, cols, tolerance)) return *c;
  throw NoKernel("optimal basis did not yield a Shapley-Snow kernel");
}

bool verify_kernel(const MatrixGame& g, const KernelCertificate& c) {
  check_indices(g, c.rows, c.cols);
  const std::size_t s = c.rows.size();
  if (s == 0 || c.cols.size() != s || c.x.size() != s || c.y.size() != s) return false;
  if (!strictly_increasing(c.rows) || !strictly_increasing(c.cols)) return false;
  RationalMatrix sub = submatrix(g, std::span<const std::size_t>(c.rows), std::span<const std::size_t>(c.cols));
  RationalMatrix co = cofactor_matrix(sub);
  Rational S = sum_entries(co);
  if (is_zero(S) || S != c.cofactor_sum) return false;
  if (c.value != det(sub) / S) return false;
  for (std::size_t i = 0; i < s; ++i) {
    Rational row_sum(0), col_sum(0);
    for (std::size_t j = 0; j < s; ++j) {
      row_sum += co(i, j);
      col_sum += co(j, i);
    }
    if (c.x[i] != row_sum / S || c.y[i] != col_sum / S) return false;
    if (sgn(c.x[i]) < 0 || sgn(c.y[i]) < 0) return false;
  }
  // Equalizing on the kernel.
  for (std::size_t j = 0; j < s; ++j) {
    Rational acc(0);
    for (std::size_t i = 0; i < s; ++i) acc += c.x[i] * sub(i, j);
    if (acc != c.value) return false;
  }
  for (std::size_t i = 0; i < s; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < s; ++j) acc += sub(i, j) * c.y[j];
    if (acc != c.value) return false;
  }
  // Optimality of the padded strategies in the whole game.
  const MixedStrategy fx = c.full_x(g.rows()), fy = c.full_y(g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Rational acc(0);
    for (std::size_t i = 0; i < g.rows(); ++i) acc += fx[i] * g(i, j);
    if (acc < c.value) return false;
  }
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < g.cols(); ++j) acc += g(i, j) * fy[j];
    if (acc > c.value) return false;
  }
  // Rank-one structure at the value.
  RationalMatrix shifted = sub;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) shifted(i, j) -= c.value;
  if (!is_zero(det(shifted))) return false;
  RationalMatrix co_shifted = cofactor_matrix(shifted);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (co_shifted(i, j) != S * c.x[i] * c.y[j]) return false;
  return true;
}

}  // namespace stochmep
