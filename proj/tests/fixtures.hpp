#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stochmep/stochastic_game.hpp"

namespace fixtures {

using stochmep::Rational;
using stochmep::RationalMatrix;
using stochmep::StateData;
using stochmep::StochasticGame;

inline Rational q(long num, long den = 1) { return stochmep::ratio(num, den); }

/// Deterministic transition table: target[i][j] is the 0-based next state.
inline std::vector<RationalMatrix> deterministic(std::size_t n, const std::vector<std::vector<std::size_t>>& target) {
  std::vector<RationalMatrix> t(n, RationalMatrix(target.size(), target.front().size()));
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < target[i].size(); ++j) t[target[i][j]](i, j) = 1;
  return t;
}

inline StateData absorbing_state(std::string name, const Rational& payoff, std::size_t n, std::size_t self) {
  return StateData{std::move(name), {"a"}, {"b"}, RationalMatrix{{payoff}}, deterministic(n, {{self}})};
}

/// Two states. In state 1, (T,L) and (B,R) pay 1 and absorb into state 2
/// (payoff 1 forever); the off-diagonal cells pay 0 and stay.
inline StochasticGame absorbing_game() {
  StateData s1{"s1", {"T", "B"}, {"L", "R"}, RationalMatrix{{q(1), q(0)}, {q(0), q(1)}},
               deterministic(2, {{1, 0}, {0, 1}})};
  return StochasticGame({s1, absorbing_state("s2", q(1), 2, 1)});
}

/// Four states; states 3 and 4 absorb with payoffs 1 and -1.
inline StochasticGame kohlberg_game() {
  StateData s1{"s1", {"T", "B"}, {"L", "R"}, RationalMatrix{{q(1), q(0)}, {q(0), q(0)}},
               deterministic(4, {{0, 1}, {1, 2}})};
  StateData s2{"s2", {"T", "B"}, {"L", "R"}, RationalMatrix{{q(-1), q(0)}, {q(0), q(0)}},
               deterministic(4, {{1, 0}, {0, 3}})};
  return StochasticGame({s1, s2, absorbing_state("s3", q(1), 4, 2), absorbing_state("s4", q(-1), 4, 3)});
}

/// Two states whose discounted values at lambda = 1/2 are (0, -4).
inline StochasticGame rank_drop_game() {
  RationalMatrix half_ones(2, 3, q(1, 2));
  StateData s1{"s1", {"a"}, {"b"}, RationalMatrix{{q(2)}}, {RationalMatrix{{q(1, 2)}}, RationalMatrix{{q(1, 2)}}}};
  StateData s2{"s2", {"T", "B"}, {"L", "M", "R"}, RationalMatrix{{q(2), q(-6), q(-6)}, {q(-6), q(2), q(-6)}},
               {half_ones, half_ones}};
  return StochasticGame({s1, s2});
}

/// p x p absorbing family: 1* on the diagonal, 0* above it, 0 (stay) below it.
/// State 2 absorbs with payoff 1, state 3 with payoff 0.
inline StochasticGame kohlberg_family(std::size_t p) {
  RationalMatrix payoff(p, p);
  std::vector<std::vector<std::size_t>> target(p, std::vector<std::size_t>(p, 0));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) {
        payoff(i, j) = 1;
        target[i][j] = 1;
      } else if (j > i) {
        target[i][j] = 2;
      }
    }
  std::vector<std::string> rows, cols;
  for (std::size_t i = 0; i < p; ++i) {
    rows.push_back("r" + std::to_string(i + 1));
    cols.push_back("c" + std::to_string(i + 1));
  }
  StateData s1{"s1", rows, cols, payoff, deterministic(3, target)};
  return StochasticGame({s1, absorbing_state("s2", q(1), 3, 1), absorbing_state("s3", q(0), 3, 2)});
}

/// Seeded generator of small rational data.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  Rational rational(long range = 5, long max_den = 4) {
    return stochmep::ratio(integer(-range * max_den, range * max_den), integer(1, max_den));
  }
  RationalMatrix matrix(std::size_t r, std::size_t c, long range = 5, long max_den = 4) {
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(range, max_den);
    return m;
  }
  /// Random probability vector of length n with small denominators.
  std::vector<Rational> distribution(std::size_t n) {
    std::vector<long> w(n);
    long total = 0;
    for (auto& x : w) {
      x = integer(0, 3);
      total += x;
    }
    if (total == 0) {
      w[index(0, n - 1)] = 1;
      total = 1;
    }
    std::vector<Rational> out;
    for (long x : w) out.push_back(stochmep::ratio(x, total));
    return out;
  }
  StochasticGame game(std::size_t n, std::size_t max_actions) {
    std::vector<StateData> states;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t p = index(1, max_actions), c = index(1, max_actions);
      StateData s;
      s.payoff = matrix(p, c, 3, 2);
      s.transitions.assign(n, RationalMatrix(p, c));
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < c; ++j) {
          auto d = distribution(n);
          for (std::size_t l = 0; l < n; ++l) s.transitions[l](i, j) = d[l];
        }
      states.push_back(std::move(s));
    }
    return StochasticGame(std::move(states));
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fixtures
