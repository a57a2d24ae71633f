#include "stochmep/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochmep {

namespace {

int sign_of(const Rational& r) { return sgn(r) > 0 ? 1 : (sgn(r) < 0 ? -1 : 0); }

std::size_t sign_variations(const std::vector<UniPoly>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign_of(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// One root of a square-free factor, known to lie in (lo, hi] unless exact.
struct Isolated {
  Rational lo, hi;
  bool exact = false;
  std::size_t factor = 0;
  unsigned multiplicity = 1;
};

struct Factor {
  UniPoly poly;
  std::vector<UniPoly> sturm;
  unsigned multiplicity;
};

// Halves an isolating interval, keeping the half that holds the root.
void bisect(Isolated& iv, const Factor& f) {
  if (iv.exact) return;
  Rational mid = (iv.lo + iv.hi) / 2;
  if (is_zero(f.poly(mid))) {
    iv.lo = iv.hi = mid;
    iv.exact = true;
    return;
  }
  if (count_roots(f.sturm, iv.lo, mid) == 1) {
    iv.hi = mid;
  } else {
    iv.lo = mid;
  }
}

void isolate(const Factor& f, std::size_t index, const Rational& a, const Rational& b, std::size_t count,
             std::vector<Isolated>& out) {
  if (count == 0) return;
  if (count == 1) {
    Isolated iv{a, b, false, index, f.multiplicity};
    if (is_zero(f.poly(b))) {
      iv.lo = b;
      iv.exact = true;
    }
    out.push_back(iv);
    return;
  }
  Rational mid = (a + b) / 2;
  std::size_t left = count_roots(f.sturm, a, mid);
  if (is_zero(f.poly(mid))) {
    // The root at mid is counted in (a, mid]; split it off exactly.
    out.push_back(Isolated{mid, mid, true, index, f.multiplicity});
    if (left > 1) {
      // Remaining left roots lie in (a, mid); shrink the upper end below mid.
      Rational upper = mid;
      std::size_t rest = left - 1;
      Rational step = (mid - a) / 2;
      while (true) {
        Rational candidate = mid - step;
        if (!is_zero(f.poly(candidate)) && count_roots(f.sturm, a, candidate) == rest) {
          upper = candidate;
          break;
        }
        step /= 2;
      }
      isolate(f, index, a, upper, rest, out);
    }
  } else {
    isolate(f, index, a, mid, left, out);
  }
  isolate(f, index, mid, b, count - left, out);
}

bool overlaps(const Isolated& x, const Isolated& y) { return x.lo <= y.hi && y.lo <= x.hi; }

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

std::size_t count_roots(const std::vector<UniPoly>& sturm, const Rational& a, const Rational& b) {
  if (b <= a) return 0;
  std::size_t va = sign_variations(sturm, a);
  std::size_t vb = sign_variations(sturm, b);
  return va >= vb ? va - vb : 0;
}

std::vector<RootEnclosure> real_roots(const UniPoly& p, const Rational& lo, const Rational& hi,
                                      const Rational& precision) {
  if (p.is_zero()) throw std::invalid_argument("real_roots: zero polynomial has infinitely many roots");
  if (lo > hi) throw std::invalid_argument("real_roots: empty interval");
  if (sgn(precision) <= 0) throw std::invalid_argument("real_roots: precision must be positive");

  std::vector<Factor> factors;
  for (auto& [f, mult] : square_free_decomposition(p)) factors.push_back(Factor{f, sturm_sequence(f), mult});

  std::vector<Isolated> found;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Factor& f = factors[i];
    if (is_zero(f.poly(lo))) found.push_back(Isolated{lo, lo, true, i, f.multiplicity});
    isolate(f, i, lo, hi, count_roots(f.sturm, lo, hi), found);
  }

  for (auto& iv : found)
    while (!iv.exact && iv.hi - iv.lo > precision) bisect(iv, factors[iv.factor]);

  // Distinct roots have positive distance, so repeated halving separates them.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < found.size(); ++i)
      for (std::size_t j = i + 1; j < found.size(); ++j) {
        if (!overlaps(found[i], found[j])) continue;
        if (found[i].exact && found[j].exact) throw std::logic_error("real_roots: duplicate exact root");
        bisect(found[i], factors[found[i].factor]);
        bisect(found[j], factors[found[j].factor]);
        changed = true;
      }
  }

  std::sort(found.begin(), found.end(), [](const Isolated& x, const Isolated& y) { return x.lo < y.lo; });
  std::vector<RootEnclosure> out;
  out.reserve(found.size());
  for (const auto& iv : found) out.push_back(RootEnclosure{iv.lo, iv.hi, iv.multiplicity});
  return out;
}

Rational cauchy_bound(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("cauchy_bound: zero polynomial");
  Rational m(0);
  const Rational lead = abs(p.leading());
  for (long i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(static_cast<std::size_t>(i))) / lead;
    if (r > m) m = r;
  }
  return Rational(m + 1);
}

bool separation_lower_bound(const std::vector<RootEnclosure>& roots, Rational& out) {
  if (roots.size() < 2) return false;
  bool first = true;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    Rational gap = roots[i].lo - roots[i - 1].hi;
    if (first || gap < out) out = gap;
    first = false;
  }
  return true;
}

}  // namespace stochmep
