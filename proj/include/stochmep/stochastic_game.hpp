#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stochmep/matrix_array.hpp"
#include "stochmep/matrix_game.hpp"
#include "stochmep/rational.hpp"

namespace stochmep {

/// Data of one state: action labels, stage payoff and one transition matrix
/// per target state (entry (i,j) of transitions[l] is the probability of
/// moving to state l after actions i and j).
struct StateData {
  std::string name;
  std::vector<std::string> actions1;
  std::vector<std::string> actions2;
  RationalMatrix payoff;
  std::vector<RationalMatrix> transitions;

  friend bool operator==(const StateData&, const StateData&) = default;
};

/// Finite zero-sum stochastic game with state-dependent action sets.
/// States and actions are 0-based in the API.
class StochasticGame {
 public:
  /// Validates shapes, labels and that every transition row is a probability
  /// vector (entries in [0,1], exact sum 1). Throws std::invalid_argument.
  explicit StochasticGame(std::vector<StateData> states);

  std::size_t num_states() const noexcept { return states_.size(); }
  const StateData& state(std::size_t k) const { return states_.at(k); }
  const std::vector<StateData>& states() const noexcept { return states_; }
  std::size_t rows(std::size_t k) const { return state(k).payoff.rows(); }
  std::size_t cols(std::size_t k) const { return state(k).payoff.cols(); }

  /// Smallest and largest stage payoff over all states.
  Rational payoff_min() const;
  Rational payoff_max() const;
  /// True when state k has one action per player and stays put surely.
  bool is_absorbing(std::size_t k) const;

  friend bool operator==(const StochasticGame&, const StochasticGame&) = default;

 private:
  std::vector<StateData> states_;
};

void require_discount(const Rational& lambda);

/// lambda * g^k + (1 - lambda) * sum_l Q^k_l z^l.
RationalMatrix local_game(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& z,
                          std::size_t k);
Matrix<double> local_game(const StochasticGame& g, double lambda, const std::vector<double>& z, std::size_t k);

/// Exact Shapley operator: per-state value of the local game.
std::vector<Rational> shapley_operator(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& z);
std::vector<double> shapley_operator(const StochasticGame& g, double lambda, const std::vector<double>& z);

enum class ValueMethod {
  automatic,        // iteration when cheap and representable, bisection otherwise
  iteration,        // floating-point value iteration from 0
  exact_iteration,  // rational value iteration from 0
  bisection,        // per-state bisection on the sign of the auxiliary-matrix game
};

/// Approximation z of v_lambda with a certified bound |z - v_lambda|_inf <= error_bound <= epsilon.
struct DiscountedValues {
  std::vector<Rational> values;
  Rational error_bound;
  std::size_t iterations = 0;
  ValueMethod method = ValueMethod::automatic;

  std::vector<double> as_double() const;
};

/// Thrown when the requested accuracy cannot be certified.
class NumericInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discounted values. The iteration stops once |Phi(z) - z| <= epsilon*lambda,
/// which by the (1 - lambda)-contraction gives |z - v| <= residual / lambda;
/// the residual is recomputed exactly for the certificate.
DiscountedValues discounted_values(const StochasticGame& g, const Rational& lambda, const Rational& epsilon,
                                   ValueMethod method = ValueMethod::automatic);

/// Exact residual bound |Phi(z) - z|_inf / lambda for an arbitrary z.
Rational certified_error(const StochasticGame& g, const Rational& lambda, const std::vector<Rational>& z);

struct StationaryProfile {
  std::vector<MixedStrategy> x;  // per state, over the row player's actions
  std::vector<MixedStrategy> y;  // per state, over the column player's actions
};

/// Exact discounted payoff of a stationary profile:
/// (Id - (1 - lambda) Q(x,y)) gamma = lambda g(x,y).
std::vector<Rational> stationary_payoff(const StochasticGame& g, const Rational& lambda,
                                        const StationaryProfile& profile);

/// The data array: M_0^k = lambda G^k, M_k^k = (1 - lambda) Q^k_k - U,
/// M_l^k = (1 - lambda) Q^k_l otherwise. Entries are polynomials in lambda.
LambdaArray data_array(const StochasticGame& g);

}  // namespace stochmep
