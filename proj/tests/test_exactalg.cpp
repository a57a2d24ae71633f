#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stochmep/linalg.hpp"
#include "stochmep/poly.hpp"
#include "stochmep/roots.hpp"

using namespace stochmep;
using fixtures::q;

namespace {

UniPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(v);
}

// u as a BiPoly, lambda as a BiPoly.
const BiPoly U = BiPoly::w();
const BiPoly L = BiPoly::lambda();

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("6/10"), q(3, 5));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), q(1, 1000));
  EXPECT_EQ(parse_rational(" +2.5E1 "), q(25));
  EXPECT_EQ(to_string(q(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(q(7)), "7");
}

TEST(Rational, RejectsMalformed) {
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/2/3"), ParseError);
  EXPECT_THROW(parse_rational("0.5/2"), ParseError);
}

TEST(UniPoly, StripsTrailingZerosAndEvaluates) {
  UniPoly p(std::vector<Rational>{q(1), q(0), q(0)});
  EXPECT_EQ(p.degree(), 0);
  EXPECT_TRUE(UniPoly(std::vector<Rational>{q(0)}).is_zero());
  EXPECT_EQ(UniPoly().degree(), -1);
  UniPoly r = poly({-4, 0, 1});
  EXPECT_EQ(r(q(2)), q(0));
  EXPECT_EQ(r(q(1, 2)), q(-15, 4));
  EXPECT_DOUBLE_EQ(r.eval(3.0), 5.0);
}

TEST(UniPoly, DivisionGcdAndSquareFree) {
  UniPoly a = poly({-1, 0, 1});  // (x-1)(x+1)
  UniPoly b = poly({-1, 1});
  auto [quot, rem] = divmod(a, b);
  EXPECT_EQ(quot, poly({1, 1}));
  EXPECT_TRUE(rem.is_zero());
  EXPECT_THROW(exact_div(a, poly({2, 1})), std::domain_error);
  EXPECT_EQ(gcd(a, poly({1, 2, 1})), poly({1, 1}));

  // 3 (x-1)^2 (x+2)^3 (x^2+1)
  UniPoly p = UniPoly(q(3)) * pow(poly({-1, 1}), 2) * pow(poly({2, 1}), 3) * poly({1, 0, 1});
  auto sf = square_free_decomposition(p);
  ASSERT_EQ(sf.size(), 3u);
  EXPECT_EQ(sf[0].first, poly({1, 0, 1}));
  EXPECT_EQ(sf[0].second, 1u);
  EXPECT_EQ(sf[1].first, poly({-1, 1}));
  EXPECT_EQ(sf[1].second, 2u);
  EXPECT_EQ(sf[2].first, poly({2, 1}));
  EXPECT_EQ(sf[2].second, 3u);
}

TEST(UniPoly, Rendering) {
  EXPECT_EQ(to_string(poly({1, -2, 1}), "u"), "u^2 - 2*u + 1");
  EXPECT_EQ(to_string(UniPoly(q(-1, 2)) * UniPoly::x()), "-1/2*w");
  EXPECT_EQ(to_string(UniPoly()), "0");
}

TEST(BiPoly, ExactDivisionAndLowestTerm) {
  BiPoly p = L * L * ((BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U);
  auto t = lowest_lambda_term(p);
  EXPECT_EQ(t.order, 2u);
  EXPECT_EQ(t.coefficient, poly({1, -2, 1}));
  EXPECT_EQ(exact_div(p, L * L), (BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U);
  EXPECT_THROW(exact_div(p, L + U), std::domain_error);

  auto c = lowest_lambda_term(BiPoly(poly({-3, 1})));
  EXPECT_EQ(c.order, 0u);
  EXPECT_EQ(c.coefficient, poly({-3, 1}));
  EXPECT_THROW(lowest_lambda_term(BiPoly()), std::invalid_argument);
}

TEST(Determinant, PencilOfTheAbsorbingGame) {
  BiPolyMatrix m{{L * (BiPoly(1) - U), BiPoly(-1) * L * L * U}, {BiPoly(-1) * L * L * U, L * (BiPoly(1) - U)}};
  BiPoly expected = L * L * ((BiPoly(1) - U) * (BiPoly(1) - U) - L * L * U * U);
  EXPECT_EQ(det(m), expected);
  EXPECT_EQ(det_bareiss(m), expected);
  EXPECT_EQ(det_leibniz(m), expected);
}

TEST(Determinant, IdentityAndNonSquare) {
  EXPECT_EQ(det(PolyMatrix::identity(3)), UniPoly(1));
  EXPECT_EQ(det_bareiss(RationalMatrix::identity(6)), q(1));
  EXPECT_THROW(det(RationalMatrix(2, 3)), std::invalid_argument);
  EXPECT_THROW(det_bareiss(PolyMatrix(3, 2)), std::invalid_argument);
}

TEST(Determinant, BareissMatchesLeibnizOnRandomPencils) {
  fixtures::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    PolyMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = UniPoly(std::vector<Rational>{gen.rational(), gen.rational()});
    EXPECT_EQ(det_bareiss(m), det_leibniz(m));
  }
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = gen.matrix(5, 5);
    if (trial % 3 == 0) m(0, 0) = 0;
    EXPECT_EQ(det_bareiss(m), det_leibniz(m));
  }
}

TEST(Determinant, CofactorMatrix) {
  RationalMatrix g{{q(0), q(2)}, {q(3), q(0)}};
  RationalMatrix expected{{q(0), q(-3)}, {q(-2), q(0)}};
  EXPECT_EQ(cofactor_matrix(g), expected);
  EXPECT_EQ(cofactor_matrix(RationalMatrix{{q(5)}}), (RationalMatrix{{q(1)}}));
  EXPECT_EQ(cofactor_matrix(RationalMatrix::identity(2)), RationalMatrix::identity(2));
  EXPECT_THROW(cofactor_matrix(RationalMatrix(2, 3)), std::invalid_argument);

  fixtures::Gen gen(5);
  RationalMatrix m = gen.matrix(4, 4);
  EXPECT_EQ(m * transpose(cofactor_matrix(m)), RationalMatrix::identity(4) * det(m));
}

TEST(Rank, ProfileGivesNonzeroMinor) {
  RationalMatrix m{{q(1), q(2), q(3)}, {q(2), q(4), q(6)}, {q(1), q(0), q(1)}};
  RankProfile r = rank_profile(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_NE(det(submatrix(m, std::span<const std::size_t>(r.rows), std::span<const std::size_t>(r.cols))), q(0));
  EXPECT_EQ(rank(RationalMatrix(3, 4)), 0u);
}

TEST(Roots, DoubleRootAtOne) {
  auto roots = real_roots(poly({1, -2, 1}), q(0), q(1), q(1, 1000));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_TRUE(roots[0].contains(q(1)));
  EXPECT_EQ(roots[0].multiplicity, 2u);
  EXPECT_LE(roots[0].width(), q(1, 1000));
}

TEST(Roots, SixteenUSquared) {
  auto roots = real_roots(poly({0, 0, 16}), q(-1), q(1), q(1, 1000));
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_TRUE(roots[0].is_exact());
  EXPECT_EQ(roots[0].lo, q(0));
  EXPECT_EQ(roots[0].multiplicity, 2u);
}

TEST(Roots, NoneInRangeAndErrors) {
  EXPECT_TRUE(real_roots(poly({-4, 0, 1}), q(0), q(1), q(1, 100)).empty());
  EXPECT_THROW(real_roots(UniPoly(), q(0), q(1), q(1, 100)), std::invalid_argument);
  EXPECT_THROW(real_roots(poly({1, 1}), q(1), q(0), q(1, 100)), std::invalid_argument);
  EXPECT_THROW(real_roots(poly({1, 1}), q(0), q(1), q(0)), std::invalid_argument);
}

TEST(Roots, IrrationalAndEndpointRoots) {
  // (x^2 - 2)(x - 1)(x + 1)^2 on [-1, 2]
  UniPoly p = poly({-2, 0, 1}) * poly({-1, 1}) * pow(poly({1, 1}), 2);
  auto roots = real_roots(p, q(-1), q(2), q(1, 1 << 20));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0].lo, q(-1));
  EXPECT_EQ(roots[0].multiplicity, 2u);
  EXPECT_TRUE(roots[1].contains(q(1)));
  EXPECT_NEAR(roots[2].midpoint().get_d(), std::sqrt(2.0), 1e-6);
  for (std::size_t i = 1; i < roots.size(); ++i) EXPECT_LT(roots[i - 1].hi, roots[i].lo);
}

TEST(Roots, ManyCloseRoots) {
  UniPoly p(1);
  for (long r = 1; r <= 6; ++r) p *= UniPoly(std::vector<Rational>{ratio(-r, 100), Rational(1)});
  p *= poly({-3, 0, 1000});  // roots +-sqrt(3/1000) ~ 0.0548
  auto roots = real_roots(p, q(0), q(1), q(1, 1 << 30));
  ASSERT_EQ(roots.size(), 7u);
  for (std::size_t i = 1; i < roots.size(); ++i) EXPECT_LT(roots[i - 1].hi, roots[i].lo);
}
