#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "stochmep/matrix_array.hpp"
#include "stochmep/rational.hpp"
#include "stochmep/stochastic_game.hpp"

namespace stochmep {

/// Game files are JSON. Every number is a string holding an exact rational.
///
///   {"kind": "stochastic_game",
///    "states": [{"name": "s1", "actions1": ["T", "B"], "actions2": ["L", "R"],
///                "payoff": [["1", "0"], ["0", "1"]],
///                "transitions": [[["0", "1"], ["1", "0"]],
///                                [["1", "0"], ["0", "1"]]]}, ...]}
///
/// transitions[i][j] is the distribution over target states after actions
/// (i, j). A second kind holds a bare matrix array:
///
///   {"kind": "matrix_array", "rows": [[M_0, ..., M_n], ...]}
///
/// with each M a list of rows of rational strings.
struct GameDocument {
  std::optional<StochasticGame> game;
  RationalArray array;  // data of a "matrix_array" document

  bool is_game() const { return game.has_value(); }
};

/// Throws ParseError with a line or field-path diagnostic.
GameDocument parse_document(std::string_view text);
StochasticGame parse_game(std::string_view text);

/// Reads a file ("-" is standard input). Throws ParseError when unreadable.
GameDocument read_document(const std::string& path);

/// Canonical rendering; parse_game(render(g)) == g.
std::string render(const StochasticGame& g);
std::string render(const RationalArray& a);

}  // namespace stochmep
