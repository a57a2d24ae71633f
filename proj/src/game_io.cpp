#include "stochmep/game_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "json_text.hpp"

namespace stochmep {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

void only_fields(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                 std::initializer_list<const char*> required) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key)) fail(path, "unknown field '" + key + "'");
  for (const char* r : required)
    if (!obj.contains(r)) fail(path, std::string("missing field '") + r + "'");
}

const json& array_at(const json& parent, const char* key, const std::string& path) {
  const json& a = parent.at(key);
  if (!a.is_array()) fail(path + "." + key, "expected a list");
  return a;
}

Rational rational_at(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "rationals must be written as strings, e.g. \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

RationalMatrix matrix_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty list of rows");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].empty()) fail(rp, "expected a nonempty row");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols)
      fail(rp, "ragged matrix: row has " + std::to_string(v[i].size()) + " entries, expected " + std::to_string(cols));
  }
  RationalMatrix m(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = rational_at(v[i][j], path + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  return m;
}

std::vector<std::string> labels_at(const json& obj, const char* key, std::size_t expected, const std::string& path) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const json& a = array_at(obj, key, path);
  const std::string p = path + "." + key;
  if (a.size() != expected)
    fail(p, std::to_string(a.size()) + " labels for " + std::to_string(expected) + " actions");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_string()) fail(p + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(a[i].get<std::string>());
  }
  return out;
}

StateData state_at(const json& s, std::size_t k, std::size_t n, const std::string& path) {
  only_fields(s, path, {"name", "actions1", "actions2", "payoff", "transitions"}, {"payoff", "transitions"});
  StateData d;
  if (s.contains("name")) {
    if (!s["name"].is_string()) fail(path + ".name", "expected a string");
    d.name = s["name"].get<std::string>();
  }
  if (d.name.empty()) d.name = "s" + std::to_string(k + 1);
  d.payoff = matrix_at(s["payoff"], path + ".payoff");
  const std::size_t p = d.payoff.rows(), q = d.payoff.cols();
  d.actions1 = labels_at(s, "actions1", p, path);
  d.actions2 = labels_at(s, "actions2", q, path);
  if (d.actions1.empty())
    for (std::size_t i = 0; i < p; ++i) d.actions1.push_back(std::to_string(i + 1));
  if (d.actions2.empty())
    for (std::size_t j = 0; j < q; ++j) d.actions2.push_back(std::to_string(j + 1));

  const json& t = array_at(s, "transitions", path);
  const std::string tp = path + ".transitions";
  if (t.size() != p) fail(tp, std::to_string(t.size()) + " rows, the payoff has " + std::to_string(p));
  d.transitions.assign(n, RationalMatrix(p, q));
  for (std::size_t i = 0; i < p; ++i) {
    const std::string rp = tp + "[" + std::to_string(i) + "]";
    if (!t[i].is_array() || t[i].size() != q) fail(rp, "expected " + std::to_string(q) + " distributions");
    for (std::size_t j = 0; j < q; ++j) {
      const std::string cp = rp + "[" + std::to_string(j) + "]";
      const std::string pair = "state '" + d.name + "', actions (" + d.actions1[i] + ", " + d.actions2[j] + ")";
      const json& row = t[i][j];
      if (!row.is_array() || row.size() != n)
        fail(cp, pair + ": expected a distribution over " + std::to_string(n) + " states");
      Rational total(0);
      for (std::size_t l = 0; l < n; ++l) {
        Rational pr = rational_at(row[l], cp + "[" + std::to_string(l) + "]");
        if (sgn(pr) < 0 || pr > 1) fail(cp, pair + ": probability " + to_string(pr) + " outside [0,1]");
        total += pr;
        d.transitions[l](i, j) = pr;
      }
      if (total != 1) fail(cp, pair + ": transition row sums to " + to_string(total) + ", not 1");
    }
  }
  return d;
}

StochasticGame game_at(const json& doc) {
  only_fields(doc, "$", {"kind", "states"}, {"states"});
  const json& states = array_at(doc, "states", "$");
  if (states.empty()) fail("$.states", "a game needs at least one state");
  std::vector<StateData> out;
  for (std::size_t k = 0; k < states.size(); ++k)
    out.push_back(state_at(states[k], k, states.size(), "$.states[" + std::to_string(k) + "]"));
  try {
    return StochasticGame(std::move(out));
  } catch (const std::invalid_argument& e) {
    fail("$.states", e.what());
  }
}

RationalArray array_doc_at(const json& doc) {
  only_fields(doc, "$", {"kind", "rows"}, {"kind", "rows"});
  const json& rows = array_at(doc, "rows", "$");
  if (rows.empty()) fail("$.rows", "a matrix array needs at least one row");
  std::vector<std::vector<RationalMatrix>> out(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::string rp = "$.rows[" + std::to_string(k) + "]";
    if (!rows[k].is_array() || rows[k].size() != rows.size() + 1)
      fail(rp, "expected " + std::to_string(rows.size() + 1) + " matrices");
    for (std::size_t l = 0; l < rows[k].size(); ++l) {
      out[k].push_back(matrix_at(rows[k][l], rp + "[" + std::to_string(l) + "]"));
      if (out[k][l].rows() != out[k][0].rows() || out[k][l].cols() != out[k][0].cols())
        fail(rp + "[" + std::to_string(l) + "]", "matrices in one row must share their shape");
    }
  }
  return RationalArray(std::move(out));
}

std::string line_diagnostic(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

ordered_json matrix_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

GameDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_diagnostic(text, e.byte) + ": malformed JSON");
  }
  if (!doc.is_object()) fail("$", "expected an object");
  std::string kind = "stochastic_game";
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) fail("$.kind", "expected a string");
    kind = doc["kind"].get<std::string>();
  }
  GameDocument out;
  if (kind == "stochastic_game")
    out.game = game_at(doc);
  else if (kind == "matrix_array")
    out.array = array_doc_at(doc);
  else
    fail("$.kind", "unknown kind '" + kind + "' (stochastic_game or matrix_array)");
  return out;
}

StochasticGame parse_game(std::string_view text) {
  GameDocument d = parse_document(text);
  if (!d.is_game()) fail("$.kind", "expected a stochastic_game document");
  return std::move(*d.game);
}

GameDocument read_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string render(const StochasticGame& g) {
  ordered_json doc;
  doc["kind"] = "stochastic_game";
  doc["states"] = ordered_json::array();
  const std::size_t n = g.num_states();
  for (const auto& s : g.states()) {
    ordered_json st;
    st["name"] = s.name;
    st["actions1"] = s.actions1;
    st["actions2"] = s.actions2;
    st["payoff"] = matrix_json(s.payoff);
    ordered_json t = ordered_json::array();
    for (std::size_t i = 0; i < s.payoff.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < s.payoff.cols(); ++j) {
        ordered_json dist = ordered_json::array();
        for (std::size_t l = 0; l < n; ++l) dist.push_back(to_string(s.transitions[l](i, j)));
        row.push_back(std::move(dist));
      }
      t.push_back(std::move(row));
    }
    st["transitions"] = std::move(t);
    doc["states"].push_back(std::move(st));
  }
  return pretty(doc);
}

std::string render(const RationalArray& a) {
  ordered_json doc;
  doc["kind"] = "matrix_array";
  doc["rows"] = ordered_json::array();
  for (std::size_t k = 0; k < a.n(); ++k) {
    ordered_json row = ordered_json::array();
    for (const auto& m : a.row(k)) row.push_back(matrix_json(m));
    doc["rows"].push_back(std::move(row));
  }
  return pretty(doc);
}

}  // namespace stochmep
