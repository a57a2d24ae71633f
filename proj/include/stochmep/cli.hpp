#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "stochmep/stochastic_game.hpp"

namespace stochmep {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_parse = 2, exit_infeasible = 3 };

/// Runs one command line (without the program name). The report goes to
/// `out` (or to --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Kohlberg's p x p absorbing game: 1* on the diagonal, 0* above it and 0
/// (no transition) below it, where c* pays c and absorbs into a state paying c.
StochasticGame kohlberg_family(std::size_t p);

}  // namespace stochmep
