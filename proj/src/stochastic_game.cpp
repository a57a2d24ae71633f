#include "stochmep/stochastic_game.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "stochmep/mep.hpp"

namespace stochmep {

namespace {

std::string action_pair(const StateData& s, std::size_t i, std::size_t j) {
  return "state '" + s.name + "', actions (" + s.actions1[i] + ", " + s.actions2[j] + ")";
}

Rational max_abs_payoff(const StochasticGame& g) {
  Rational m(0);
  for (const auto& s : g.states())
    for (const auto& e : s.payoff.entries())
      if (abs(e) > m) m = abs(e);
  return m;
}

void require_length(const StochasticGame& g, std::size_t len) {
  if (len != g.num_states()) throw std::invalid_argument("vector length differs from the number of states");
}

}  // namespace

StochasticGame::StochasticGame(std::vector<StateData> states) : states_(std::move(states)) {
  const std::size_t n = states_.size();
  if (n == 0) throw std::invalid_argument("a stochastic game needs at least one state");
  std::set<std::string> names;
  for (std::size_t k = 0; k < n; ++k) {
    StateData& s = states_[k];
    if (s.name.empty()) s.name = "s" + std::to_string(k + 1);
    if (!names.insert(s.name).second) throw std::invalid_argument("duplicate state name '" + s.name + "'");
    const std::size_t p = s.payoff.rows(), q = s.payoff.cols();
    if (p == 0 || q == 0) throw std::invalid_argument("state '" + s.name + "' has an empty action set");
    if (s.actions1.empty())
      for (std::size_t i = 0; i < p; ++i) s.actions1.push_back(std::to_string(i + 1));
    if (s.actions2.empty())
      for (std::size_t j = 0; j < q; ++j) s.actions2.push_back(std::to_string(j + 1));
    if (s.actions1.size() != p || s.actions2.size() != q)
      throw std::invalid_argument("state '" + s.name + "': action labels do not match the payoff shape");
    if (s.transitions.size() != n)
      throw std::invalid_argument("state '" + s.name + "': expected one transition matrix per state");
    for (const auto& t : s.transitions)
      if (t.rows() != p || t.cols() != q)
        throw std::invalid_argument("state '" + s.name + "': transition matrix shape differs from the payoff");
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        Rational total(0);
        for (const auto& t : s.transitions) {
          if (sgn(t(i, j)) < 0 || t(i, j) > 1)
            throw std::invalid_argument(action_pair(s, i, j) + ": transition probability outside [0,1]");
          total += t(i, j);
        }
        if (total != 1)
          throw std::invalid_argument(action_pair(s, i, j) + ": transition probabilities sum to " + to_string(total) +
                                      ", not 1");
      }
  }
}

Rational StochasticGame::payoff_min() const {
  Rational m = states_.front().payoff(0, 0);
  for (const auto& s : states_)
    for (const auto& e : s.payoff.entries())
      if (e < m) m = e;
  return m;
}

Rational StochasticGame::payoff_max() const {
  Rational m = states_.front().payoff(0, 0);
  for (const auto& s : states_)
    for (const auto& e : s.payoff.entries())
      if (e > m) m = e;
  return m;
}

bool StochasticGame::is_absorbing(std::size_t k) const {
  const StateData& s = state(k);
  return s.payoff.rows() == 1 && s.payoff.cols() == 1 && s.transitions[k](0, 0) == 1;
}

void require_discount(const Rational& lambda) {
  if (sgn(lambda) <= 0 || lambda > 1) throw std::invalid_argument("discount factor must lie in (0, 1]");
}

RationalMatrix local_game(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& z,
                          std::size_t k) {
  require_discount(lambda);
  require_length(g, z.size());
  const StateData& s = g.state(k);
  const Rational carry = 1 - lambda;
  RationalMatrix out(s.payoff.rows(), s.payoff.cols());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Rational cont(0);
      for (std::size_t l = 0; l < z.size(); ++l)
        if (!is_zero(s.transitions[l](i, j))) cont += s.transitions[l](i, j) * z[l];
      out(i, j) = lambda * s.payoff(i, j) + carry * cont;
    }
  return out;
}

Matrix<double> local_game(const StochasticGame& g, double lambda, const std::vector<double>& z, std::size_t k) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("discount factor must lie in (0, 1]");
  require_length(g, z.size());
  const StateData& s = g.state(k);
  Matrix<double> out(s.payoff.rows(), s.payoff.cols(), 0.0);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      double cont = 0.0;
      for (std::size_t l = 0; l < z.size(); ++l) cont += s.transitions[l](i, j).get_d() * z[l];
      out(i, j) = lambda * s.payoff(i, j).get_d() + (1.0 - lambda) * cont;
    }
  return out;
}

std::vector<Rational> shapley_operator(const StochasticGame& g, const Rational& lambda,
                                       const std::vector<Rational>& z) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k < g.num_states(); ++k) out.push_back(exact_value(local_game(g, lambda, z, k)));
  return out;
}

std::vector<double> shapley_operator(const StochasticGame& g, double lambda, const std::vector<double>& z) {
  std::vector<double> out;
  for (std::size_t k = 0; k < g.num_states(); ++k) out.push_back(solve_numeric(local_game(g, lambda, z, k)).value);
  return out;
}

std::vector<double> DiscountedValues::as_double() const {
  std::vector<double> out;
  for (const auto& v : values) out.push_back(v.get_d());
  return out;
}

Rational certified_error(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& z) {
  std::vector<Rational> phi = shapley_operator(g, lambda, z);
  Rational res(0);
  for (std::size_t k = 0; k < z.size(); ++k)
    if (abs(Rational(phi[k] - z[k])) > res) res = abs(Rational(phi[k] - z[k]));
  return Rational(res / lambda);
}

namespace {

DiscountedValues by_bisection(const StochasticGame& g, const Rational& lambda, const Rational& epsilon) {
  RationalAux aux = aux_matrices(evaluate_lambda(data_array(g), lambda));
  auto brackets = bracket_values(aux, g.payoff_min(), g.payoff_max(), Rational(2 * epsilon));
  DiscountedValues out;
  out.method = ValueMethod::bisection;
  out.error_bound = 0;
  for (const auto& b : brackets) {
    out.values.push_back(Rational((b.lo + b.hi) / 2));
    Rational half = (b.hi - b.lo) / 2;
    if (half > out.error_bound) out.error_bound = half;
  }
  return out;
}

double iteration_estimate(const StochasticGame& g, const Rational& lambda, const Rational& epsilon) {
  const double lam = lambda.get_d();
  const double scale = std::max(1.0, max_abs_payoff(g).get_d());
  return std::log(2.0 * scale / (epsilon.get_d() * lam)) / lam;
}

}  // namespace

DiscountedValues discounted_values(const StochasticGame& g, const Rational& lambda, const Rational& epsilon,
                                   ValueMethod method) {
  require_discount(lambda);
  if (sgn(epsilon) <= 0) throw std::invalid_argument("epsilon must be positive");
  const std::size_t n = g.num_states();

  if (lambda == 1) {
    DiscountedValues out;
    out.method = method;
    out.error_bound = 0;
    for (std::size_t k = 0; k < n; ++k) out.values.push_back(exact_value(g.state(k).payoff));
    return out;
  }

  const double estimate = iteration_estimate(g, lambda, epsilon);
  const double scale = 1.0 + max_abs_payoff(g).get_d();
  if (method == ValueMethod::automatic) {
    const bool representable = Rational(epsilon * lambda).get_d() > 1e-13 * scale;
    method = (estimate <= 2e5 && representable) ? ValueMethod::iteration : ValueMethod::bisection;
  }
  if (method == ValueMethod::bisection) return by_bisection(g, lambda, epsilon);

  const std::size_t cap = static_cast<std::size_t>(std::max(1000.0, 4.0 * estimate + 1000.0));
  DiscountedValues out;
  out.method = method;
  if (method == ValueMethod::exact_iteration) {
    std::vector<Rational> z(n, Rational(0));
    const Rational target = epsilon * lambda;
    for (std::size_t it = 1; it <= cap; ++it) {
      std::vector<Rational> next = shapley_operator(g, lambda, z);
      Rational res(0);
      for (std::size_t k = 0; k < n; ++k)
        if (abs(Rational(next[k] - z[k])) > res) res = abs(Rational(next[k] - z[k]));
      z = std::move(next);
      if (res <= target) {
        out.values = z;
        out.iterations = it;
        out.error_bound = certified_error(g, lambda, z);
        return out;
      }
    }
    throw NumericInfeasible("exact value iteration did not reach the requested accuracy");
  }

  const double lam = lambda.get_d();
  const double target = 0.5 * epsilon.get_d() * lam;
  std::vector<double> z(n, 0.0);
  std::size_t it = 0;
  for (; it < cap; ++it) {
    std::vector<double> next = shapley_operator(g, lam, z);
    double res = 0.0;
    for (std::size_t k = 0; k < n; ++k) res = std::max(res, std::abs(next[k] - z[k]));
    z = std::move(next);
    if (res <= target) break;
  }
  out.iterations = it + 1;
  for (double v : z) out.values.push_back(from_double(v));
  out.error_bound = certified_error(g, lambda, out.values);
  if (out.error_bound <= epsilon) return out;
  // Rounding kept the residual above the target; fall back to exact bracketing.
  return by_bisection(g, lambda, epsilon);
}

std::vector<Rational> stationary_payoff(const StochasticGame& g, const Rational& lambda,
                                        const StationaryProfile& profile) {
  require_discount(lambda);
  const std::size_t n = g.num_states();
  if (profile.x.size() != n || profile.y.size() != n) throw std::invalid_argument("profile must cover every state");
  RationalMatrix a = RationalMatrix::identity(n);
  std::vector<Rational> rhs(n, Rational(0));
  const Rational carry = 1 - lambda;
  for (std::size_t k = 0; k < n; ++k) {
    const StateData& s = g.state(k);
    const auto& x = profile.x[k];
    const auto& y = profile.y[k];
    if (x.size() != s.payoff.rows() || y.size() != s.payoff.cols())
      throw std::invalid_argument("profile strategy length differs from the action count");
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) {
        Rational w = x[i] * y[j];
        if (is_zero(w)) continue;
        rhs[k] += lambda * w * s.payoff(i, j);
        for (std::size_t l = 0; l < n; ++l) a(k, l) -= carry * w * s.transitions[l](i, j);
      }
  }
  return solve_linear(std::move(a), std::move(rhs));
}

LambdaArray data_array(const StochasticGame& g) {
  const std::size_t n = g.num_states();
  const UniPoly lam = UniPoly::x();
  const UniPoly carry(std::vector<Rational>{Rational(1), Rational(-1)});
  std::vector<std::vector<PolyMatrix>> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    const StateData& s = g.state(k);
    const std::size_t p = s.payoff.rows(), q = s.payoff.cols();
    PolyMatrix m0(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) m0(i, j) = lam * s.payoff(i, j);
    rows[k].push_back(std::move(m0));
    for (std::size_t l = 0; l < n; ++l) {
      PolyMatrix m(p, q);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j) {
          m(i, j) = carry * s.transitions[l](i, j);
          if (l == k) m(i, j) -= UniPoly(1);
        }
      rows[k].push_back(std::move(m));
    }
  }
  return LambdaArray(std::move(rows));
}

bool satisfies_h2(const RationalArray& a, const Rational& lambda) {
  if (!a.satisfies_h1()) return false;
  for (std::size_t k = 0; k < a.n(); ++k) {
    RationalMatrix total(a.row_rows(k), a.row_cols(k));
    for (std::size_t l = 1; l <= a.n(); ++l) {
      const RationalMatrix& m = a(k, l);
      for (const auto& e : m.entries()) {
        if (l == k + 1 && sgn(e) > 0) return false;
        if (l != k + 1 && sgn(e) < 0) return false;
      }
      total += m;
    }
    for (const auto& e : total.entries())
      if (e > -lambda) return false;
  }
  return true;
}

}  // namespace stochmep
