#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stochmep/kron.hpp"
#include "stochmep/matrix_game.hpp"
#include "stochmep/stochastic_game.hpp"

using namespace stochmep;
using fixtures::q;

namespace {

const MatrixGame kSskGame{{q(1), q(0), q(1)}, {q(0), q(1), q(2)}, {q(3), q(2), q(0)}};

// Row player's guaranteed payoff and column player's guaranteed loss.
Rational floor_of(const MatrixGame& g, const MixedStrategy& x) {
  Rational best;
  for (std::size_t j = 0; j < g.cols(); ++j) {
    Rational s(0);
    for (std::size_t i = 0; i < g.rows(); ++i) s += x[i] * g(i, j);
    if (j == 0 || s < best) best = s;
  }
  return best;
}
Rational ceiling_of(const MatrixGame& g, const MixedStrategy& y) {
  Rational best;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < g.cols(); ++j) s += g(i, j) * y[j];
    if (i == 0 || s > best) best = s;
  }
  return best;
}

}  // namespace

TEST(MatrixGame, ShapleySnowExample) {
  KernelCertificate c = find_kernel(kSskGame);
  EXPECT_EQ(c.value, q(6, 5));
  EXPECT_EQ(c.rows, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(c.cols, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c.x, (MixedStrategy{q(3, 5), q(2, 5)}));
  EXPECT_EQ(c.y, (MixedStrategy{q(2, 5), q(3, 5)}));
  EXPECT_EQ(c.cofactor_sum, q(-5));
  EXPECT_TRUE(verify_kernel(kSskGame, c));
  EXPECT_EQ(floor_of(kSskGame, c.full_x(3)), q(6, 5));
  EXPECT_EQ(ceiling_of(kSskGame, c.full_y(3)), q(6, 5));
}

TEST(MatrixGame, ExactAndNumericAgree) {
  EXPECT_EQ(exact_value(kSskGame), q(6, 5));
  GameSolution s = game_value(kSskGame);
  EXPECT_EQ(s.value, q(6, 5));
  NumericGameSolution n = solve_numeric(to_double(kSskGame));
  EXPECT_NEAR(n.value, 1.2, 1e-12);
}

TEST(MatrixGame, PureSaddleAndTies) {
  MatrixGame g{{q(2), q(3)}, {q(1), q(0)}};
  KernelCertificate c = find_kernel(g);
  EXPECT_EQ(c.value, q(2));
  EXPECT_EQ(c.rows.size(), 1u);
  // Matching pennies has the full matrix as its only kernel.
  MatrixGame mp{{q(1), q(-1)}, {q(-1), q(1)}};
  auto all = enumerate_kernels(mp);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].rows.size(), 2u);
  EXPECT_EQ(all[0].value, q(0));
  // A constant game: every 1x1 sub-game is a kernel.
  MatrixGame flat(2, 3, q(4));
  EXPECT_EQ(enumerate_kernels(flat).size(), 6u);
}

TEST(MatrixGame, CertifyRejectsNonKernels) {
  EXPECT_FALSE(certify_subgame(kSskGame, {0}, {0}).has_value());
  EXPECT_THROW(certify_subgame(kSskGame, {0, 1}, {0}), std::invalid_argument);
  EXPECT_THROW(certify_subgame(kSskGame, {1, 0}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(certify_subgame(kSskGame, {0, 5}, {0, 1}), std::out_of_range);
}

TEST(MatrixGame, LargerGameUsesSimplexBasis) {
  fixtures::Gen gen(3);
  for (int t = 0; t < 5; ++t) {
    MatrixGame g = gen.matrix(9, 10);
    KernelCertificate c = find_kernel(g);
    EXPECT_TRUE(verify_kernel(g, c));
    EXPECT_EQ(c.value, exact_value(g));
  }
}

TEST(Kron, CanonicalIndex) {
  const std::vector<std::size_t> dims{2, 3};
  EXPECT_EQ(canonical_index(std::vector<std::size_t>{1, 1}, dims), 1u);
  EXPECT_EQ(canonical_index(std::vector<std::size_t>{2, 3}, dims), 6u);
  EXPECT_EQ(canonical_index(std::vector<std::size_t>{2, 1}, dims), 4u);
  EXPECT_THROW(canonical_index(std::vector<std::size_t>{3, 1}, dims), std::out_of_range);
  EXPECT_THROW(canonical_index(std::vector<std::size_t>{0, 1}, dims), std::out_of_range);
  for (std::size_t f = 0; f < 6; ++f) EXPECT_EQ(flat_index(multi_index(f, dims), dims), f);
}

TEST(Kron, ProductBlocks) {
  RationalMatrix a{{q(1), q(2)}, {q(3), q(4)}};
  RationalMatrix b{{q(0), q(5)}, {q(6), q(7)}};
  RationalMatrix k = kron_product(a, b);
  ASSERT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(0, 1), q(5));
  EXPECT_EQ(k(3, 2), q(24));
  EXPECT_EQ(k(2, 3), q(20));
  // det(A (x) B) = det(A)^2 det(B)^2 for 2x2 factors.
  EXPECT_EQ(det(k), det(a) * det(a) * det(b) * det(b));
  EXPECT_EQ(kron_vector<Rational>({{q(1), q(2)}, {q(3), q(5)}}), (std::vector<Rational>{q(3), q(5), q(6), q(10)}));
}

TEST(Kron, ScalarArrayIsOrdinaryDeterminant) {
  std::vector<std::vector<RationalMatrix>> arr{{RationalMatrix{{q(2)}}, RationalMatrix{{q(3)}}},
                                               {RationalMatrix{{q(5)}}, RationalMatrix{{q(7)}}}};
  EXPECT_EQ(kron_det(arr)(0, 0), q(-1));
  EXPECT_EQ(kron_det(arr, KronMethod::leibniz)(0, 0), q(-1));
}

TEST(StochasticGame, AbsorbingGameValuesAtHalf) {
  StochasticGame g = fixtures::absorbing_game();
  for (auto method : {ValueMethod::iteration, ValueMethod::exact_iteration, ValueMethod::bisection}) {
    DiscountedValues dv = discounted_values(g, q(1, 2), q(1, 1000000000), method);
    ASSERT_EQ(dv.values.size(), 2u);
    EXPECT_LE(abs(dv.values[0] - q(2, 3)), dv.error_bound);
    EXPECT_LE(abs(dv.values[1] - q(1)), dv.error_bound);
    EXPECT_LE(dv.error_bound, q(1, 1000000000));
  }
}

TEST(StochasticGame, ShapleyFixedPointAndCertificate) {
  StochasticGame g = fixtures::absorbing_game();
  // v^1 = 1/(1+lambda) exactly.
  const Rational lam = q(1, 3);
  std::vector<Rational> v{Rational(1 / (1 + lam)), q(1)};
  EXPECT_EQ(shapley_operator(g, lam, v), v);
  EXPECT_EQ(certified_error(g, lam, v), q(0));
  EXPECT_GT(certified_error(g, lam, {q(0), q(1)}), q(0));
}

TEST(StochasticGame, RankDropGameValues) {
  DiscountedValues dv = discounted_values(fixtures::rank_drop_game(), q(1, 2), q(1, 1000000000));
  EXPECT_LE(abs(dv.values[0]), dv.error_bound);
  EXPECT_LE(abs(dv.values[1] + 4), dv.error_bound);
}

TEST(StochasticGame, StationaryPayoffOfOptimalProfile) {
  StochasticGame g = fixtures::absorbing_game();
  StationaryProfile prof{{{q(1, 2), q(1, 2)}, {q(1)}}, {{q(1, 2), q(1, 2)}, {q(1)}}};
  // Both players mixing uniformly is optimal; v^1 = 1/(1+lambda).
  auto gamma = stationary_payoff(g, q(1, 2), prof);
  EXPECT_EQ(gamma[0], q(2, 3));
  EXPECT_EQ(gamma[1], q(1));
}

TEST(StochasticGame, Validation) {
  StateData bad{"s1", {"a"}, {"b"}, RationalMatrix{{q(0)}}, {RationalMatrix{{q(1, 2)}}}};
  try {
    StochasticGame g({bad});
    FAIL() << "expected a probability error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
  }
  StateData neg{"s1", {}, {}, RationalMatrix{{q(0)}}, {RationalMatrix{{q(-1)}}}};
  EXPECT_THROW(StochasticGame({neg}), std::invalid_argument);
  EXPECT_THROW(StochasticGame(std::vector<StateData>{}), std::invalid_argument);
  StateData ragged{"s1", {}, {}, RationalMatrix{{q(0)}}, {RationalMatrix(1, 2)}};
  EXPECT_THROW(StochasticGame({ragged}), std::invalid_argument);
  EXPECT_THROW(discounted_values(fixtures::absorbing_game(), q(0), q(1, 10)), std::invalid_argument);
  EXPECT_THROW(discounted_values(fixtures::absorbing_game(), q(3, 2), q(1, 10)), std::invalid_argument);
}

TEST(StochasticGame, SingleStateGame) {
  StateData s{"s1", {}, {}, RationalMatrix{{q(7, 3)}}, {RationalMatrix{{q(1)}}}};
  StochasticGame g({s});
  EXPECT_TRUE(g.is_absorbing(0));
  DiscountedValues dv = discounted_values(g, q(1, 5), q(1, 1000));
  EXPECT_LE(abs(dv.values[0] - q(7, 3)), dv.error_bound);
}

TEST(StochasticGame, DataArrayOfAbsorbingGame) {
  LambdaArray d = data_array(fixtures::absorbing_game());
  const UniPoly lam = UniPoly::x(), one(1);
  EXPECT_EQ(d(0, 0), (PolyMatrix{{lam, UniPoly()}, {UniPoly(), lam}}));
  EXPECT_EQ(d(0, 1), (PolyMatrix{{-one, -lam}, {-lam, -one}}));
  EXPECT_EQ(d(0, 2), (PolyMatrix{{one - lam, UniPoly()}, {UniPoly(), one - lam}}));
  EXPECT_EQ(d(1, 0), (PolyMatrix{{lam}}));
  EXPECT_EQ(d(1, 1), (PolyMatrix{{UniPoly()}}));
  EXPECT_EQ(d(1, 2), (PolyMatrix{{-lam}}));
  EXPECT_TRUE(satisfies_h2(evaluate_lambda(d, q(1, 3)), q(1, 3)));
}
