#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "stochmep/ssk.hpp"

using namespace stochmep;
using fixtures::q;

namespace {

const BiPoly U = BiPoly::w();
const BiPoly L = BiPoly::lambda();

std::vector<Rational> absorbing_values(const Rational& lam) { return {Rational(1 / (1 + lam)), q(1)}; }

}  // namespace

TEST(Reduce, RankDropGameTopRightKernel) {
  StochasticGame g = fixtures::rank_drop_game();
  ReducedArray r = reduce_array(g, q(1, 2), {q(0), q(-4)}, q(0));
  EXPECT_EQ(r.kernels[1].rows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.kernels[1].cols, (std::vector<std::size_t>{2}));
  RationalArray expected({{RationalMatrix{{q(1)}}, RationalMatrix{{q(-3, 4)}}, RationalMatrix{{q(1, 4)}}},
                          {RationalMatrix{{q(-3)}}, RationalMatrix{{q(1, 4)}}, RationalMatrix{{q(-3, 4)}}}});
  EXPECT_EQ(r.array, expected);
  EXPECT_EQ(r.aux[0](0, 0), q(1, 2));
  EXPECT_EQ(r.aux[1](0, 0), q(0));
  EXPECT_EQ(r.aux[2](0, 0), q(-2));
  EXPECT_TRUE(rank_drop_holds(r.aux[1], r.aux[0], q(0)));
  EXPECT_TRUE(rank_drop_holds(r.aux[2], r.aux[0], q(-4)));
  EXPECT_EQ(char_poly_reduced(r, 0).poly, UniPoly(std::vector<Rational>{q(0), q(-1, 2)}));
  EXPECT_EQ(char_poly_reduced(r, 1).poly, UniPoly(std::vector<Rational>{q(-2), q(-1, 2)}));
}

TEST(Reduce, ReducedAuxIsSubmatrixOfFull) {
  StochasticGame g = fixtures::rank_drop_game();
  RationalAux full = aux_matrices(evaluate_lambda(data_array(g), q(1, 2)));
  for (const ReducedArray& r : reduce_array_all(g, q(1, 2), {q(0), q(-4)}, q(0))) {
    for (std::size_t l = 0; l <= 2; ++l)
      EXPECT_EQ(r.aux[l], submatrix(full[l], std::span<const std::size_t>(r.delta_rows),
                                    std::span<const std::size_t>(r.delta_cols)));
  }
  // State 2 has the two scalar kernels in column R and two 2x2 kernels whose
  // strategies put weight 0 on the first row and column.
  EXPECT_EQ(reduce_array_all(g, q(1, 2), {q(0), q(-4)}, q(0)).size(), 4u);
}

TEST(Reduce, AbsorbingGameKeepsFullArray) {
  StochasticGame g = fixtures::absorbing_game();
  const Rational lam = q(1, 3);
  ReducedArray r = reduce_array(g, lam, absorbing_values(lam), q(0));
  EXPECT_EQ(r.symbolic, data_array(g));
  EXPECT_EQ(char_poly_reduced_symbolic(r, 0), L * L * ((BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U));
  CharPoly cp = char_poly_reduced(r, 0);
  EXPECT_TRUE(is_zero(cp.poly(absorbing_values(lam)[0])));
  EXPECT_LE(cp.poly.degree(), static_cast<long>(rank(r.aux.delta0())));
  EXPECT_NE(reduced_cofactor_sum(r, 0), q(0));
}

TEST(Reduce, OneStateGame) {
  StateData s{"s1", {}, {}, RationalMatrix{{q(5, 2)}}, {RationalMatrix{{q(1)}}}};
  StochasticGame g({s});
  ReducedArray r = reduce_array(g, q(1, 4), {q(5, 2)}, q(0));
  EXPECT_EQ(r.symbolic, data_array(g));
  GlobalCharPoly gp = char_poly_global(g, q(1, 4), {q(5, 2)}, 0, q(0));
  // Delta^0 = -lambda and Delta^1 = -5/2 lambda, so the pencil is lambda (w - 5/2).
  EXPECT_EQ(gp.poly, UniPoly(std::vector<Rational>{q(-5, 8), q(1, 4)}));
}

TEST(Reduce, KernelRevalidation) {
  StochasticGame g = fixtures::rank_drop_game();
  ReducedArray r = reduce_array(g, q(1, 2), {q(0), q(-4)}, q(0));
  EXPECT_TRUE(kernels_valid_at(g, r.kernels, q(1, 2), {q(0), q(-4)}, q(0)));
  auto wrong = r.kernels;
  wrong[1].cols = {0};
  EXPECT_FALSE(kernels_valid_at(g, wrong, q(1, 2), {q(0), q(-4)}, q(0)));
}

TEST(GlobalCharPoly, AbsorbingGame) {
  StochasticGame g = fixtures::absorbing_game();
  const Rational lam = q(1, 2);
  GlobalCharPoly p1 = char_poly_global(g, lam, absorbing_values(lam), 0, q(0));
  EXPECT_EQ(p1.kernel.rows.size(), 2u);
  BiPoly expected = L * L * ((BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U);
  EXPECT_EQ(p1.poly, expected.at_lambda(lam));
  EXPECT_NE(p1.poly.derivative()(absorbing_values(lam)[0]), q(0));
  GlobalCharPoly p2 = char_poly_global(g, lam, absorbing_values(lam), 1, q(0));
  EXPECT_TRUE(is_zero(p2.poly(q(1))));
}

TEST(CandidateFamily, AbsorbingGame) {
  LambdaAux aux = aux_matrices(data_array(fixtures::absorbing_game()));
  auto fam = candidate_family(aux, 0, 2);
  ASSERT_EQ(fam.size(), 3u);
  EXPECT_EQ(fam[0], L * (BiPoly(1) - U));
  EXPECT_EQ(fam[1], BiPoly(-1) * L * L * U);
  EXPECT_EQ(fam[2], L * L * ((BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U));
  EXPECT_THROW(candidate_family(aux, 0, 2, 4), CapExceeded);
}

TEST(CandidateFamily, RankDropGameEntries) {
  LambdaAux aux = aux_matrices(data_array(fixtures::rank_drop_game()));
  auto fam = candidate_family(aux, 0, 1);
  std::vector<BiPoly> entries;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      BiPoly e = BiPoly::from_lambda(aux[1](i, j)) - U * BiPoly::from_lambda(aux[0](i, j));
      if (!e.is_zero() && std::find(entries.begin(), entries.end(), e) == entries.end()) entries.push_back(e);
    }
  EXPECT_EQ(fam, entries);
}

TEST(CandidateFamily, ScalarPencil) {
  LambdaAux aux;
  aux.deltas = {PolyMatrix{{UniPoly(3)}}, PolyMatrix{{UniPoly(7)}}};
  auto fam = candidate_family(aux, 0, 1);
  ASSERT_EQ(fam.size(), 1u);
  EXPECT_EQ(fam[0], BiPoly(7) - BiPoly(3) * U);
}

TEST(RankDropWithin, Brackets) {
  RationalMatrix a{{q(1), q(0)}, {q(0), q(2)}};
  RationalMatrix b = RationalMatrix::identity(2);
  EXPECT_TRUE(rank_drop_within(a, b, q(9, 10), q(11, 10)));
  EXPECT_FALSE(rank_drop_within(a, b, q(5, 4), q(7, 4)));
  EXPECT_TRUE(rank_drop_within(a, b, q(2), q(2)));
  // Rows (1-w, 0, 0) and (0, 2-w, 1): only w = 1 lowers the rank.
  RationalMatrix c{{q(1), q(0), q(0)}, {q(0), q(2), q(1)}};
  RationalMatrix d{{q(1), q(0), q(0)}, {q(0), q(1), q(0)}};
  EXPECT_TRUE(rank_drop_within(c, d, q(0), q(3, 2)));
  EXPECT_FALSE(rank_drop_within(c, d, q(3, 2), q(3)));
}
