#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stochmep/matrix_game.hpp"
#include "stochmep/poly.hpp"
#include "stochmep/roots.hpp"
#include "stochmep/stochastic_game.hpp"

namespace stochmep {

/// Lowest nonvanishing lambda-coefficient (s, P_s) of P(lambda, w).
inline LambdaTerm phi(const BiPoly& p) { return lowest_lambda_term(p); }

/// Real roots in [g_lo, g_hi] of the phi-polynomials of the given
/// characterising polynomials. Roots shared between polynomials appear once;
/// the enclosures are pairwise disjoint. Multiplicity is the largest one
/// found among the phi-polynomials.
std::vector<RootEnclosure> limit_candidates(const std::vector<BiPoly>& polys, const Rational& g_lo,
                                            const Rational& g_hi, const Rational& precision);

enum class CharSource { reduced, global };

/// lambda = 2^-m for m = first..last.
std::vector<Rational> geometric_schedule(unsigned first = 4, unsigned last = 24);

struct LimitOptions {
  CharSource source = CharSource::reduced;
  std::vector<Rational> schedule = geometric_schedule();  // strictly decreasing
  Rational epsilon = Rational(1) / Rational(mpz_class(1) << 64);
  Rational precision = Rational(1) / Rational(mpz_class(1) << 48);  // width of candidate enclosures
  std::size_t reselect_limit = 6;
};

/// One evaluation of the discounted value of the state under study.
struct Probe {
  Rational lambda;
  Rational value;
  Rational error_bound;
};

struct AsymptoticReport {
  std::size_t state = 0;
  CharSource source = CharSource::reduced;
  BiPoly char_poly;
  /// Lambda at which the kernels were chosen, and those kernels (one per state
  /// for the reduced source; the kernel of the pencil game for the global one).
  Rational kernel_lambda;
  std::vector<KernelCertificate> kernels;
  /// The kernels certify at every stability probe.
  bool kernel_stable = false;
  std::vector<Rational> stability_probes;
  /// P(lambda, .) vanishes inside the certified value bracket at every probe.
  bool annihilates_probes = false;
  /// Rank of the (reduced or restricted) Delta^0 at kernel_lambda.
  std::size_t rank_delta0 = 0;
  std::size_t s = 0;
  UniPoly phi;
  std::vector<RootEnclosure> candidates;
  std::optional<Rational> separation;  // empty for a single candidate (infinite)
  RootEnclosure limit;
  Rational isolated_at;
  std::vector<Probe> evaluations;
  /// 1/b for the multiplicity b of the limit as a root of phi.
  Rational multiplicity_bound;
  Rational rate_bound() const { return Rational(1) / Rational(static_cast<long>(rank_delta0)); }
};

/// Limit of the discounted value of state k as lambda -> 0 by the separation
/// argument. Throws NumericInfeasible when the schedule is exhausted before
/// exactly one candidate is isolated, or when no candidate exists.
AsymptoticReport limit_value(const StochasticGame& g, std::size_t k, const LimitOptions& options = {});

struct RatePoint {
  Rational lambda;
  double distance = 0.0;
  bool used = false;
};

struct RateFit {
  /// Least-squares slope of log|v_lambda - v_0| against log lambda; empty when
  /// fewer than two points lie above the noise floor (converged exactly).
  std::optional<double> exponent;
  std::vector<RatePoint> points;
  double noise_floor = 0.0;
};

/// Fits the convergence exponent over the grid (at least four points). The
/// noise floor is 10 * (epsilon + width of the limit enclosure).
RateFit rate_fit(const StochasticGame& g, std::size_t k, const std::vector<Rational>& grid,
                 const RootEnclosure& limit, const Rational& epsilon);

/// Certified discounted values at each lambda of the grid, computed in parallel.
std::vector<DiscountedValues> values_on_grid(const StochasticGame& g, const std::vector<Rational>& grid,
                                             const Rational& epsilon);

}  // namespace stochmep
