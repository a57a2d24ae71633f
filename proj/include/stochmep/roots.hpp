#pragma once

#include <cstddef>
#include <vector>

#include "stochmep/poly.hpp"
#include "stochmep/rational.hpp"

namespace stochmep {

/// Closed rational interval [lo, hi] holding exactly one real root of the
/// polynomial it was isolated from. lo == hi means the root is that rational.
struct RootEnclosure {
  Rational lo;
  Rational hi;
  unsigned multiplicity = 1;

  bool is_exact() const { return lo == hi; }
  Rational width() const { return Rational(hi - lo); }
  Rational midpoint() const { return Rational((lo + hi) / 2); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Sturm sequence of p: p, p', then negated remainders.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of p in the half-open interval (a, b],
/// via the sign-variation difference of the Sturm sequence.
std::size_t count_roots(const std::vector<UniPoly>& sturm, const Rational& a, const Rational& b);

/// All real roots of p in [lo, hi] with their multiplicities, sorted, each in an
/// interval of width <= precision. Enclosures are pairwise disjoint.
/// Throws std::invalid_argument for p = 0, lo > hi or precision <= 0.
std::vector<RootEnclosure> real_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                      const Rational& precision);

/// Cauchy bound: every real root of p lies in [-B, B]. Throws for p = 0.
Rational cauchy_bound(const UniPoly& p);

/// Lower bound on the gap between consecutive disjoint enclosures: the minimum
/// of next.lo - prev.hi. Returns false when fewer than two enclosures are given.
bool separation_lower_bound(const std::vector<RootEnclosure>& roots, Rational& out);

}  // namespace stochmep
