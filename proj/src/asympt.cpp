#include "stochmep/asympt.hpp"

#include <cmath>
#include <future>
#include <map>
#include <stdexcept>

#include "stochmep/linalg.hpp"
#include "stochmep/mep.hpp"
#include "stochmep/ssk.hpp"

namespace stochmep {

namespace {

UniPoly square_free_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  return exact_div(p, gcd(p, p.derivative())).monic();
}

UniPoly lcm(const UniPoly& a, const UniPoly& b) {
  if (a.degree() <= 0) return b.monic();
  if (b.degree() <= 0) return a.monic();
  return exact_div(a * b, gcd(a, b)).monic();
}

bool has_root_in(const UniPoly& f, const RootEnclosure& e) {
  if (e.is_exact()) return is_zero(f(e.lo));
  return is_zero(f(e.hi)) || count_roots(sturm_sequence(f), e.lo, e.hi) > 0;
}

// The characterising polynomial vanishes inside the certified bracket.
bool annihilates(const BiPoly& p, const Probe& probe) {
  UniPoly at = p.at_lambda(probe.lambda);
  if (at.is_zero()) return true;
  if (is_zero(probe.error_bound)) return is_zero(at(probe.value));
  Rational lo = probe.value - probe.error_bound, hi = probe.value + probe.error_bound;
  return !real_roots(at, lo, hi, Rational(hi - lo)).empty();
}

void require_schedule(const std::vector<Rational>& s) {
  if (s.empty()) throw std::invalid_argument("lambda schedule is empty");
  for (std::size_t i = 0; i < s.size(); ++i) {
    require_discount(s[i]);
    if (i > 0 && !(s[i] < s[i - 1])) throw std::invalid_argument("lambda schedule must be strictly decreasing");
  }
}

struct Selection {
  BiPoly char_poly;
  std::vector<KernelCertificate> kernels;
  std::size_t rank_delta0 = 0;
};

class ValueCache {
 public:
  ValueCache(const StochasticGame& g, const Rational& epsilon) : g_(g), epsilon_(epsilon) {}
  const DiscountedValues& at(const Rational& lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end()) it = cache_.emplace(lambda, discounted_values(g_, lambda, epsilon_)).first;
    return it->second;
  }

 private:
  const StochasticGame& g_;
  Rational epsilon_;
  std::map<Rational, DiscountedValues> cache_;
};

Selection select_reduced(const StochasticGame& g, std::size_t k, const Rational& lambda, const DiscountedValues& dv) {
  ReducedArray r = reduce_array(g, lambda, dv.values, kernel_tolerance(g, dv.error_bound));
  Selection s;
  s.char_poly = char_poly_reduced_symbolic(r, k);
  s.rank_delta0 = rank(r.aux.delta0());
  s.kernels = r.kernels;
  return s;
}

Selection select_global(std::size_t k, const Rational& lambda, const DiscountedValues& dv,
                        const LambdaAux& symbolic) {
  RationalAux aux = evaluate_lambda(symbolic, lambda);
  GlobalCharPoly gp = char_poly_global(aux, dv.values, k, pencil_kernel_tolerance(aux, k, dv.error_bound));
  Selection s;
  s.char_poly = symbolic_minor(symbolic, k, gp.kernel.rows, gp.kernel.cols);
  const std::span<const std::size_t> rows(gp.kernel.rows), cols(gp.kernel.cols);
  s.rank_delta0 = rank(submatrix(aux.delta0(), rows, cols));
  s.kernels.push_back(std::move(gp.kernel));
  return s;
}

bool stable_at(const StochasticGame& g, std::size_t k, CharSource source, const Selection& sel,
               const LambdaAux* symbolic, const Rational& lambda, const DiscountedValues& dv) {
  if (source == CharSource::reduced)
    return kernels_valid_at(g, sel.kernels, lambda, dv.values, kernel_tolerance(g, dv.error_bound));
  RationalAux aux = evaluate_lambda(*symbolic, lambda);
  const auto& c = sel.kernels.front();
  return certify_subgame(signed_pencil_at(aux, k, dv.values[k]), c.rows, c.cols,
                         pencil_kernel_tolerance(aux, k, dv.error_bound))
      .has_value();
}

}  // namespace

std::vector<Rational> geometric_schedule(unsigned first, unsigned last) {
  if (first > last) throw std::invalid_argument("geometric_schedule: first exponent exceeds last");
  std::vector<Rational> out;
  for (unsigned m = first; m <= last; ++m) out.push_back(Rational(1) / Rational(mpz_class(1) << m));
  return out;
}

std::vector<RootEnclosure> limit_candidates(const std::vector<BiPoly>& polys, const Rational& g_lo,
                                            const Rational& g_hi, const Rational& precision) {
  if (polys.empty()) throw std::invalid_argument("limit_candidates: no polynomials");
  std::vector<UniPoly> phis;
  UniPoly all(1);
  for (const auto& p : polys) {
    if (p.is_zero()) throw std::invalid_argument("limit_candidates: zero polynomial");
    phis.push_back(phi(p).coefficient);
    all = lcm(all, square_free_part(phis.back()));
  }
  if (all.degree() <= 0) return {};
  std::vector<RootEnclosure> roots = real_roots(all, g_lo, g_hi, precision);
  for (auto& r : roots) {
    r.multiplicity = 0;
    for (const auto& f : phis)
      for (const auto& [factor, mult] : square_free_decomposition(f))
        if (mult > r.multiplicity && has_root_in(factor, r)) r.multiplicity = mult;
  }
  return roots;
}

std::vector<DiscountedValues> values_on_grid(const StochasticGame& g, const std::vector<Rational>& grid,
                                             const Rational& epsilon) {
  std::vector<std::future<DiscountedValues>> jobs;
  for (const auto& lambda : grid)
    jobs.push_back(std::async(std::launch::async, [&g, lambda, epsilon] { return discounted_values(g, lambda, epsilon); }));
  std::vector<DiscountedValues> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

AsymptoticReport limit_value(const StochasticGame& g, std::size_t k, const LimitOptions& options) {
  if (k >= g.num_states()) throw std::out_of_range("limit_value: state index out of range");
  require_schedule(options.schedule);
  const auto& schedule = options.schedule;
  ValueCache values(g, options.epsilon);

  std::optional<LambdaAux> symbolic;
  if (options.source == CharSource::global) symbolic = aux_matrices(data_array(g));

  AsymptoticReport rep;
  rep.state = k;
  rep.source = options.source;

  // Kernel choice at the smallest lambda; on a kernel change among the probes
  // the choice moves to a smaller lambda.
  Selection sel;
  for (std::size_t attempt = 0; attempt <= options.reselect_limit; ++attempt) {
    Rational lam_sel = schedule.back();
    std::vector<Rational> probes;
    if (attempt == 0) {
      for (std::size_t i = schedule.size(); i-- > 0 && probes.size() < 3;) probes.push_back(schedule[i]);
    } else {
      lam_sel /= Rational(mpz_class(1) << attempt);
      probes = {lam_sel, Rational(2 * lam_sel), Rational(4 * lam_sel)};
    }
    const DiscountedValues& dv = values.at(lam_sel);
    sel = options.source == CharSource::reduced ? select_reduced(g, k, lam_sel, dv)
                                                : select_global(k, lam_sel, dv, *symbolic);
    rep.kernel_lambda = lam_sel;
    rep.stability_probes = probes;
    rep.kernel_stable = true;
    rep.annihilates_probes = true;
    for (const auto& lam : probes) {
      const DiscountedValues& pv = values.at(lam);
      if (!stable_at(g, k, options.source, sel, symbolic ? &*symbolic : nullptr, lam, pv)) rep.kernel_stable = false;
      if (!annihilates(sel.char_poly, Probe{lam, pv.values[k], pv.error_bound})) rep.annihilates_probes = false;
    }
    if (rep.kernel_stable) break;
  }
  rep.char_poly = sel.char_poly;
  rep.kernels = sel.kernels;
  rep.rank_delta0 = sel.rank_delta0;

  LambdaTerm t = phi(rep.char_poly);
  rep.s = t.order;
  rep.phi = t.coefficient;
  rep.candidates = limit_candidates({rep.char_poly}, g.payoff_min(), g.payoff_max(), options.precision);
  if (rep.candidates.empty())
    throw NumericInfeasible("no candidate limit in the payoff range for state " + g.state(k).name);
  Rational delta;
  if (separation_lower_bound(rep.candidates, delta)) rep.separation = delta;

  for (const auto& lam : schedule) {
    const DiscountedValues& dv = values.at(lam);
    rep.evaluations.push_back(Probe{lam, dv.values[k], dv.error_bound});
    std::size_t hits = 0, which = 0;
    if (!rep.separation) {
      hits = 1;
    } else {
      const Rational half = *rep.separation / 2;
      const Rational lo = dv.values[k] - dv.error_bound - half, hi = dv.values[k] + dv.error_bound + half;
      for (std::size_t i = 0; i < rep.candidates.size(); ++i)
        if (rep.candidates[i].lo <= hi && lo <= rep.candidates[i].hi) {
          ++hits;
          which = i;
        }
    }
    if (hits == 1) {
      rep.limit = rep.candidates[which];
      rep.isolated_at = lam;
      rep.multiplicity_bound = Rational(1) / Rational(static_cast<long>(std::max(1u, rep.limit.multiplicity)));
      return rep;
    }
  }
  throw NumericInfeasible("lambda schedule exhausted before a single limit candidate was isolated");
}

RateFit rate_fit(const StochasticGame& g, std::size_t k, const std::vector<Rational>& grid, const RootEnclosure& limit,
                 const Rational& epsilon) {
  if (grid.size() < 4) throw std::invalid_argument("rate_fit: the grid needs at least four points");
  if (k >= g.num_states()) throw std::out_of_range("rate_fit: state index out of range");
  require_schedule(grid);
  RateFit fit;
  const Rational center = limit.midpoint();
  fit.noise_floor = 10.0 * (epsilon.get_d() + limit.width().get_d());
  std::vector<DiscountedValues> vals = values_on_grid(g, grid, epsilon);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    RatePoint pt;
    pt.lambda = grid[i];
    pt.distance = Rational(abs(vals[i].values[k] - center)).get_d();
    pt.used = pt.distance > fit.noise_floor;
    if (pt.used) {
      const double x = std::log(grid[i].get_d()), y = std::log(pt.distance);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    fit.points.push_back(pt);
  }
  if (m >= 2) {
    const double denom = m * sxx - sx * sx;
    if (denom != 0.0) fit.exponent = (m * sxy - sx * sy) / denom;
  }
  return fit;
}

}  // namespace stochmep
