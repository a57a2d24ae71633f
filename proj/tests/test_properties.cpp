#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "stochmep/kron.hpp"
#include "stochmep/linalg.hpp"
#include "stochmep/matrix_game.hpp"
#include "stochmep/mep.hpp"
#include "stochmep/ssk.hpp"

using namespace stochmep;
using fixtures::Gen;
using fixtures::q;

namespace {

constexpr int kCases = 200;

using Array = std::vector<std::vector<RationalMatrix>>;

// n x (n+1) array with row k made of p_k x q_k blocks.
Array random_array(Gen& gen, std::size_t n, std::size_t cols_of_array, std::size_t max_block) {
  Array a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = gen.index(1, max_block), c = gen.index(1, max_block);
    for (std::size_t l = 0; l < cols_of_array; ++l) a[k].push_back(gen.matrix(p, c, 3, 3));
  }
  return a;
}

// Games in which every state past the first absorbs with probability at least 1/2.
StochasticGame game_with_absorbing_states(Gen& gen) {
  const std::size_t n = gen.index(2, 3);
  StochasticGame base = gen.game(n, 2);
  std::vector<StateData> states = base.states();
  for (std::size_t k = 1; k < n; ++k) {
    if (gen.index(0, 1) == 0) continue;
    states[k] = fixtures::absorbing_state("s" + std::to_string(k + 1), gen.rational(3, 2), n, k);
  }
  return StochasticGame(states);
}

Rational random_lambda(Gen& gen) { return q(gen.integer(1, 15), 16); }

}  // namespace

TEST(Property, TranslationChangesDeterminantByCofactorSum) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(1000 + t);
    const std::size_t n = gen.index(1, 5);
    RationalMatrix m = gen.matrix(n, n);
    const Rational w = gen.rational();
    EXPECT_EQ(det(m + w * ones<Rational>(n, n)), det(m) + w * sum_entries(cofactor_matrix(m)));
  }
}

TEST(Property, KernelsInvariantUnderTranslation) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(2000 + t);
    MatrixGame g = gen.matrix(gen.index(1, 4), gen.index(1, 4));
    const Rational c = gen.rational();
    MatrixGame h = g + c * ones<Rational>(g.rows(), g.cols());
    auto a = enumerate_kernels(g), b = enumerate_kernels(h);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].rows, b[i].rows);
      EXPECT_EQ(a[i].cols, b[i].cols);
      EXPECT_EQ(a[i].x, b[i].x);
      EXPECT_EQ(a[i].y, b[i].y);
      EXPECT_EQ(a[i].value + c, b[i].value);
    }
  }
}

TEST(Property, KroneckerBilinearAndAssociative) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(3000 + t);
    RationalMatrix a = gen.matrix(gen.index(1, 3), gen.index(1, 3));
    RationalMatrix a2 = gen.matrix(a.rows(), a.cols());
    RationalMatrix b = gen.matrix(gen.index(1, 3), gen.index(1, 3));
    RationalMatrix c = gen.matrix(gen.index(1, 2), gen.index(1, 2));
    const Rational s = gen.rational();
    EXPECT_EQ(kron_product(Rational(s) * a + a2, b), s * kron_product(a, b) + kron_product(a2, b));
    EXPECT_EQ(kron_product(kron_product(a, b), c), kron_product(a, kron_product(b, c)));
  }
}

TEST(Property, KroneckerMixedProduct) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(4000 + t);
    const std::size_t m = gen.index(1, 3), k = gen.index(1, 3), r = gen.index(1, 3);
    const std::size_t p = gen.index(1, 3), l = gen.index(1, 3), s = gen.index(1, 3);
    RationalMatrix a1 = gen.matrix(m, k), b1 = gen.matrix(k, r);
    RationalMatrix a2 = gen.matrix(p, l), b2 = gen.matrix(l, s);
    EXPECT_EQ(kron_product(a1, a2) * kron_product(b1, b2), kron_product(a1 * b1, a2 * b2));
  }
}

TEST(Property, KroneckerDeterminantAlternatesInColumns) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(5000 + t);
    const std::size_t n = gen.index(2, 3);
    Array a = random_array(gen, n, n, 2);
    const std::size_t i = gen.index(0, n - 1), j = (i + 1 + gen.index(0, n - 2)) % n;
    Array swapped = a, doubled = a;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(swapped[k][i], swapped[k][j]);
      doubled[k][j] = doubled[k][i];
    }
    RationalMatrix d = kron_det(a);
    EXPECT_EQ(kron_det(swapped), -d);
    EXPECT_EQ(kron_det(doubled), RationalMatrix(d.rows(), d.cols()));
  }
}

TEST(Property, EntrywiseDeterminantMatchesLeibniz) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(6000 + t);
    const std::size_t n = gen.index(1, 3);
    Array a = random_array(gen, n, n, 2);
    EXPECT_EQ(kron_det(a, KronMethod::entrywise), kron_det(a, KronMethod::leibniz));
  }
}

TEST(Property, TensorOfKernelVectorsAnnihilatesPencils) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(7000 + t);
    const std::size_t n = gen.index(1, 3);
    Array a = random_array(gen, n, n + 1, 3);
    std::vector<Rational> z;
    for (std::size_t l = 0; l < n; ++l) z.push_back(gen.rational());
    std::vector<std::vector<Rational>> ys;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t c = a[k][0].cols();
      std::vector<Rational> y(c);
      for (auto& e : y) e = gen.rational();
      if (std::all_of(y.begin(), y.end(), [](const Rational& e) { return is_zero(e); })) y[0] = 1;
      Rational yy(0);
      for (const auto& e : y) yy += e * e;
      // Make y a kernel vector of M_0 + sum z^l M_l by adjusting M_0.
      RationalMatrix s = a[k][0];
      for (std::size_t l = 0; l < n; ++l) s += z[l] * a[k][l + 1];
      std::vector<Rational> sy = s * y;
      for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < c; ++j) a[k][0](i, j) -= sy[i] * y[j] / yy;
      ys.push_back(y);
    }
    RationalArray arr(a);
    RationalAux aux = aux_matrices(arr);
    std::vector<Rational> y = kron_vector(ys);
    for (std::size_t k = 0; k < n; ++k) {
      RationalMatrix pencil = aux.state(k) - z[k] * aux.delta0();
      for (const auto& e : pencil * y) EXPECT_TRUE(is_zero(e)) << "case " << t;
    }
  }
}

TEST(Property, DeltaZeroEntriesAtLeastLambdaPowN) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(8000 + t);
    const std::size_t n = gen.index(1, 3);
    StochasticGame g = gen.game(n, 2);
    const Rational lam = random_lambda(gen);
    RationalAux aux = aux_matrices(evaluate_lambda(data_array(g), lam));
    const Rational bound = pow(lam, static_cast<unsigned>(n));
    for (const auto& e : aux.delta0().entries()) EXPECT_GE(n % 2 ? Rational(-e) : e, bound) << "case " << t;
  }
}

TEST(Property, AbsorbingStatesScaleDeltaZero) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(9000 + t);
    StochasticGame g = game_with_absorbing_states(gen);
    RationalAux aux = aux_matrices(evaluate_lambda(data_array(g), random_lambda(gen)));
    for (std::size_t k = 0; k < g.num_states(); ++k)
      if (g.is_absorbing(k)) EXPECT_EQ(aux.state(k), g.state(k).payoff(0, 0) * aux.delta0()) << "case " << t;
  }
}

TEST(Property, EvaluationCommutesWithDeterminant) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(10000 + t);
    StochasticGame g = gen.game(gen.index(1, 2), 2);
    const Rational lam = random_lambda(gen);
    LambdaArray d = data_array(g);
    EXPECT_EQ(evaluate_lambda(aux_matrices(d), lam), aux_matrices(evaluate_lambda(d, lam)));
  }
}

TEST(Property, ExactAndFloatingPointValuesAgree) {
  for (int t = 0; t < kCases; ++t) {
    Gen gen(11000 + t);
    MatrixGame g = gen.matrix(gen.index(1, 5), gen.index(1, 5));
    const Rational v = exact_value(g);
    EXPECT_NEAR(solve_numeric(to_double(g)).value, v.get_d(), 1e-9);
    KernelCertificate c = find_kernel(g);
    EXPECT_EQ(c.value, v);
    EXPECT_TRUE(verify_kernel(g, c));
  }
}

TEST(Property, DiscountedValueIsZeroOfPencilGame) {
  const Rational eps = q(1, 1L << 30);
  for (int t = 0; t < kCases; ++t) {
    Gen gen(12000 + t);
    const std::size_t n = gen.index(1, 3);
    StochasticGame g = gen.game(n, 3);
    const Rational lam = random_lambda(gen);
    DiscountedValues dv = discounted_values(g, lam, eps);
    RationalAux aux = aux_matrices(evaluate_lambda(data_array(g), lam));
    for (std::size_t k = 0; k < n; ++k) {
      const Rational z = dv.values[k], e = dv.error_bound;
      EXPECT_LE(abs(game_value_at(aux, k, z)), 1000 * eps) << "case " << t;
      // Strictly decreasing with its zero inside the certified bracket.
      EXPECT_GE(game_value_at(aux, k, z - e), 0) << "case " << t;
      EXPECT_LE(game_value_at(aux, k, z + e), 0) << "case " << t;
    }
  }
}

TEST(Property, ReducedArrayCharacterisesValues) {
  const Rational eps = q(1, 1L << 60);
  for (int t = 0; t < kCases; ++t) {
    Gen gen(13000 + t);
    const std::size_t n = gen.index(1, 3);
    StochasticGame g = gen.game(n, 3);
    const Rational lam = random_lambda(gen);
    DiscountedValues dv = discounted_values(g, lam, eps);
    const Rational e = dv.error_bound;
    ReducedArray r = reduce_array(g, lam, dv.values, kernel_tolerance(g, e));
    for (const auto& res : coupled_residual(r.array, dv.values)) EXPECT_LE(abs(res), 1000 * eps) << "case " << t;
    for (std::size_t k = 0; k < n; ++k) {
      const Rational lo = dv.values[k] - e, hi = dv.values[k] + e;
      EXPECT_TRUE(rank_drop_within(r.aux.state(k), r.aux.delta0(), lo, hi)) << "case " << t;
      UniPoly p = char_poly_reduced(r, k).poly;
      const bool root = is_zero(e) ? is_zero(p(dv.values[k]))
                                   : is_zero(p(lo)) || !real_roots(p, lo, hi, Rational(hi - lo)).empty();
      EXPECT_TRUE(root) << "case " << t;
    }
  }
}
