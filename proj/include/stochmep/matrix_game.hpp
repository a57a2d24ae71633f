#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stochmep/linalg.hpp"
#include "stochmep/matrix.hpp"
#include "stochmep/rational.hpp"

namespace stochmep {

/// Payoff matrix of a zero-sum game; the row player maximizes.
using MatrixGame = RationalMatrix;
using MixedStrategy = std::vector<Rational>;

/// A Shapley-Snow kernel: a square sub-game with nonzero cofactor sum whose
/// cofactor-derived strategies, padded with zeros, are optimal in the full game.
struct KernelCertificate {
  std::vector<std::size_t> rows;  // increasing, 0-based
  std::vector<std::size_t> cols;  // increasing, 0-based
  MixedStrategy x;                // over rows
  MixedStrategy y;                // over cols
  Rational value;
  Rational cofactor_sum;

  MixedStrategy full_x(std::size_t p) const;
  MixedStrategy full_y(std::size_t q) const;
};

struct GameSolution {
  Rational value;
  MixedStrategy x;
  MixedStrategy y;
};

struct NumericGameSolution {
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> y;
};

enum class SolveMode { exact, numeric };

/// Value and optimal strategies. Exact mode returns the first kernel in
/// enumeration order for small games and an exact simplex basis otherwise;
/// numeric mode runs the floating-point simplex.
GameSolution game_value(const MatrixGame& g, SolveMode mode = SolveMode::exact);

/// Floating-point primal simplex with Bland's rule.
NumericGameSolution solve_numeric(const Matrix<double>& g);

/// Exact value only, from the rational simplex.
Rational exact_value(const MatrixGame& g);

Matrix<double> to_double(const RationalMatrix& m);

struct KernelOptions {
  /// Slack allowed in nonnegativity and optimality checks. Zero means exact.
  Rational tolerance = 0;
  /// Largest kernel size considered; 0 means min(p, q).
  std::size_t size_cap = 0;
  /// Stop after this many certificates; 0 means no limit.
  std::size_t max_results = 0;
};

/// Builds the certificate for the sub-game rows x cols, or nothing when the
/// cofactor sum vanishes or the padded strategies are not optimal within
/// the tolerance.
std::optional<KernelCertificate> certify_subgame(const MatrixGame& g, const std::vector<std::size_t>& rows,
                                                 const std::vector<std::size_t>& cols,
                                                 const Rational& tolerance = 0);

/// All kernels ordered by size, then row subset, then column subset
/// (lexicographic). Warns on stderr above 8x8.
std::vector<KernelCertificate> enumerate_kernels(const MatrixGame& g, const KernelOptions& options = {});

/// One kernel. Small games: the first in enumeration order. Larger games: the
/// optimal simplex basis, checked and falling back to enumeration.
/// Throws NoKernel when none passes within the tolerance.
KernelCertificate find_kernel(const MatrixGame& g, const Rational& tolerance = 0);

class NoKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact check of the kernel conditions and of the rank-one cofactor identity
/// co(G' - vU) = S x y^T together with det(G' - vU) = 0.
/// Throws std::out_of_range for indices outside the game.
bool verify_kernel(const MatrixGame& g, const KernelCertificate& c);

/// Number of square sub-games a full enumeration visits.
double enumeration_size(std::size_t p, std::size_t q, std::size_t size_cap = 0);

}  // namespace stochmep
