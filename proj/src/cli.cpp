#include "stochmep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>

#include "stochmep/asympt.hpp"
#include "stochmep/game_io.hpp"
#include "stochmep/linalg.hpp"
#include "stochmep/mep.hpp"
#include "stochmep/ssk.hpp"
#include "json_text.hpp"

namespace stochmep {

namespace {

using ojson = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Emit {
  int digits = 17;

  ojson exact(const Rational& r) const {
    return {{"provenance", "exact"}, {"value", to_string(r)}, {"decimal", to_decimal(r, digits)}};
  }
  ojson certified(const Rational& r, const Rational& bound) const {
    return {{"provenance", "certified"},
            {"value", to_string(r)},
            {"error_bound", to_string(bound)},
            {"decimal", to_decimal(r, digits)}};
  }
  ojson enclosure(const RootEnclosure& e) const {
    return {{"provenance", e.is_exact() ? "exact" : "enclosure"},
            {"lo", to_string(e.lo)},
            {"hi", to_string(e.hi)},
            {"multiplicity", e.multiplicity},
            {"decimal", to_decimal(e.midpoint(), digits)}};
  }
  static ojson fitted(double x) { return {{"provenance", "fitted"}, {"value", x}}; }
};

ojson strings(const std::vector<Rational>& v) {
  ojson a = ojson::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

ojson matrix_rows(const RationalMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(strings(std::vector<Rational>(m.row(i).begin(), m.row(i).end())));
  return rows;
}

ojson matrix_rows(const PolyMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson r = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j), "l"));
    rows.push_back(std::move(r));
  }
  return rows;
}

// FNV-1a over the rendered entries; stable across platforms.
std::string digest(const ojson& rows) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : rows.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 15];
  return out;
}

ojson poly_json(const UniPoly& p, const std::string& var = "w") {
  return {{"provenance", "exact"}, {"coefficients", strings(p.coefficients())}, {"text", to_string(p, var)}};
}

ojson bipoly_json(const BiPoly& p) {
  ojson by = ojson::array();
  for (const auto& c : p.lambda_coefficients()) by.push_back(strings(c.coefficients()));
  return {{"provenance", "exact"}, {"lambda_coefficients", by}, {"text", to_string(p)}};
}

ojson one_based(const std::vector<std::size_t>& idx) {
  ojson a = ojson::array();
  for (auto i : idx) a.push_back(i + 1);
  return a;
}

ojson kernel_json(const StochasticGame& g, std::size_t k, const KernelCertificate& c, const Emit& e) {
  const StateData& s = g.state(k);
  ojson rows = ojson::array(), cols = ojson::array();
  for (auto i : c.rows) rows.push_back(s.actions1[i]);
  for (auto j : c.cols) cols.push_back(s.actions2[j]);
  return {{"state", s.name},   {"rows", rows},          {"cols", cols},
          {"x", strings(c.x)}, {"y", strings(c.y)},     {"local_value", e.exact(c.value)},
          {"cofactor_sum", e.exact(c.cofactor_sum)}};
}

Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& ex) {
    throw UsageError(flag + ": " + ex.what());
  }
}

std::vector<Rational> flag_schedule(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  for (const auto& t : texts) out.push_back(flag_rational("--schedule", t));
  return out;
}

struct Options {
  std::string file;
  std::string out_path;
  int digits = 17;
  std::string lambda;
  std::string eps;
  std::size_t state = 0;
  std::string source = "reduced";
  std::vector<std::string> schedule;
  std::vector<std::string> check_lambdas;
  std::size_t size = 2;
};

const StochasticGame& need_game(const GameDocument& d) {
  if (!d.is_game()) throw UsageError("this command needs a stochastic_game document");
  return *d.game;
}

std::size_t state_index(const StochasticGame& g, std::size_t one_based_state) {
  if (one_based_state < 1 || one_based_state > g.num_states())
    throw UsageError("--state must lie in 1.." + std::to_string(g.num_states()));
  return one_based_state - 1;
}

Rational epsilon_or(const Options& o, const Rational& fallback) {
  return o.eps.empty() ? fallback : flag_rational("--eps", o.eps);
}

CharSource source_of(const Options& o) { return o.source == "global" ? CharSource::global : CharSource::reduced; }

const Rational kDefaultEps = Rational(1) / Rational(mpz_class(1) << 64);

ojson cmd_solve(const StochasticGame& g, const Options& o, const Emit& e) {
  const Rational lam = flag_rational("--lambda", o.lambda);
  const Rational eps = epsilon_or(o, Rational(1) / Rational(mpz_class(1) << 40));
  require_discount(lam);
  DiscountedValues dv = discounted_values(g, lam, eps);
  ReducedArray r = reduce_array(g, lam, dv.values, kernel_tolerance(g, dv.error_bound));
  ojson states = ojson::array();
  for (std::size_t k = 0; k < g.num_states(); ++k)
    states.push_back({{"name", g.state(k).name},
                      {"value", e.certified(dv.values[k], dv.error_bound)},
                      {"kernel", kernel_json(g, k, r.kernels[k], e)}});
  return {{"lambda", e.exact(lam)}, {"epsilon", e.exact(eps)}, {"states", states}};
}

template <class T>
ojson deltas_json(const AuxMatrices<T>& aux) {
  ojson out = ojson::array();
  for (std::size_t l = 0; l < aux.deltas.size(); ++l) {
    ojson rows = matrix_rows(aux[l]);
    ojson d{{"index", l}, {"shape", {aux[l].rows(), aux[l].cols()}}};
    if constexpr (std::is_same_v<T, Rational>) d["rank"] = rank(aux[l]);
    d["digest"] = digest(rows);
    d["provenance"] = "exact";
    d["entries"] = std::move(rows);
    out.push_back(std::move(d));
  }
  return out;
}

ojson cmd_aux(const GameDocument& doc, const Options& o, const Emit& e) {
  ojson rep;
  if (!doc.is_game()) {
    RationalAux aux = aux_matrices(doc.array);
    rep["deltas"] = deltas_json(aux);
    ojson sols = ojson::array();
    try {
      for (const auto& s : solve_nonsingular_mep(aux, Rational(1) / Rational(mpz_class(1) << 60))) {
        std::vector<Rational> z;
        ojson coords = ojson::array();
        for (const auto& c : s) {
          z.push_back(c.midpoint());
          coords.push_back(e.enclosure(c));
        }
        ojson res = ojson::array();
        for (const auto& r : coupled_residual(doc.array, z)) res.push_back(to_decimal(r, 6));
        sols.push_back({{"z", coords}, {"coupled_residual_at_midpoint", res}});
      }
      rep["uncoupled_solutions"] = sols;
    } catch (const SingularMep&) {
      rep["uncoupled_solutions"] = nullptr;
    }
    return rep;
  }
  const StochasticGame& g = *doc.game;
  LambdaAux sym = aux_matrices(data_array(g));
  if (o.lambda.empty() || o.lambda == "symbolic") {
    rep["lambda"] = "symbolic";
    rep["deltas"] = deltas_json(sym);
  } else {
    const Rational lam = flag_rational("--lambda", o.lambda);
    require_discount(lam);
    rep["lambda"] = e.exact(lam);
    rep["deltas"] = deltas_json(evaluate_lambda(sym, lam));
  }
  return rep;
}

ojson cmd_charpoly(const StochasticGame& g, const Options& o, const Emit& e) {
  const std::size_t k = state_index(g, o.state);
  const Rational lam = o.lambda.empty() ? geometric_schedule().back() : flag_rational("--lambda", o.lambda);
  require_discount(lam);
  const Rational eps = epsilon_or(o, kDefaultEps);
  DiscountedValues dv = discounted_values(g, lam, eps);
  ojson rep{{"state", g.state(k).name}, {"source", o.source}, {"lambda", e.exact(lam)},
            {"value", e.certified(dv.values[k], dv.error_bound)}};
  BiPoly p;
  if (source_of(o) == CharSource::reduced) {
    ReducedArray r = reduce_array(g, lam, dv.values, kernel_tolerance(g, dv.error_bound));
    ojson ks = ojson::array();
    for (std::size_t s = 0; s < g.num_states(); ++s) ks.push_back(kernel_json(g, s, r.kernels[s], e));
    rep["kernels"] = ks;
    p = char_poly_reduced_symbolic(r, k);
    rep["cofactor_sum"] = e.exact(reduced_cofactor_sum(r, k));
  } else {
    LambdaAux sym = aux_matrices(data_array(g));
    RationalAux aux = evaluate_lambda(sym, lam);
    GlobalCharPoly gp = char_poly_global(aux, dv.values, k, pencil_kernel_tolerance(aux, k, dv.error_bound));
    rep["pencil_kernel"] = {{"rows", one_based(gp.kernel.rows)}, {"cols", one_based(gp.kernel.cols)}};
    rep["at_lambda"] = poly_json(gp.poly);
    p = symbolic_minor(sym, k, gp.kernel.rows, gp.kernel.cols);
  }
  rep["char_poly"] = bipoly_json(p);
  LambdaTerm t = phi(p);
  rep["phi"] = {{"order", t.order}, {"polynomial", poly_json(t.coefficient)}};
  return rep;
}

LimitOptions limit_options(const Options& o) {
  LimitOptions opt;
  opt.source = source_of(o);
  if (!o.schedule.empty()) opt.schedule = flag_schedule(o.schedule);
  opt.epsilon = epsilon_or(o, opt.epsilon);
  return opt;
}

ojson limit_json(const StochasticGame& g, const AsymptoticReport& r, const Emit& e) {
  ojson cands = ojson::array();
  for (const auto& c : r.candidates) cands.push_back(e.enclosure(c));
  ojson evals = ojson::array();
  for (const auto& p : r.evaluations)
    evals.push_back({{"lambda", to_string(p.lambda)}, {"value", e.certified(p.value, p.error_bound)}});
  ojson ks = ojson::array();
  if (r.source == CharSource::reduced) {
    for (std::size_t s = 0; s < r.kernels.size(); ++s) ks.push_back(kernel_json(g, s, r.kernels[s], e));
  } else {
    for (const auto& c : r.kernels) ks.push_back({{"rows", one_based(c.rows)}, {"cols", one_based(c.cols)}});
  }
  ojson probes = ojson::array();
  for (const auto& l : r.stability_probes) probes.push_back(to_string(l));
  LambdaTerm t = phi(r.char_poly);
  return {{"state", g.state(r.state).name},
          {"source", r.source == CharSource::reduced ? "reduced" : "global"},
          {"kernel_lambda", e.exact(r.kernel_lambda)},
          {"kernels", ks},
          {"kernel_stable", r.kernel_stable},
          {"stability_probes", probes},
          {"annihilates_probes", r.annihilates_probes},
          {"char_poly", bipoly_json(r.char_poly)},
          {"phi", {{"order", t.order}, {"polynomial", poly_json(t.coefficient)}}},
          {"candidates", cands},
          {"separation", r.separation ? e.exact(*r.separation) : ojson("infinity")},
          {"limit", e.enclosure(r.limit)},
          {"isolated_at", e.exact(r.isolated_at)},
          {"rank_delta0", r.rank_delta0},
          {"rate_bound", e.exact(r.multiplicity_bound)},
          {"rank_rate_bound", e.exact(r.rate_bound())},
          {"evaluations", evals}};
}

ojson cmd_limit(const StochasticGame& g, const Options& o, const Emit& e) {
  const std::size_t k = state_index(g, o.state);
  return limit_json(g, limit_value(g, k, limit_options(o)), e);
}

ojson cmd_rate(const StochasticGame& g, const Options& o, const Emit& e) {
  const std::size_t k = state_index(g, o.state);
  LimitOptions opt = limit_options(o);
  AsymptoticReport lim = limit_value(g, k, opt);
  RateFit fit = rate_fit(g, k, opt.schedule, lim.limit, opt.epsilon);
  ojson pts = ojson::array();
  for (const auto& p : fit.points)
    pts.push_back({{"lambda", to_string(p.lambda)}, {"distance", p.distance}, {"used", p.used}});
  return {{"state", g.state(k).name},
          {"limit", e.enclosure(lim.limit)},
          {"exponent", fit.exponent ? Emit::fitted(*fit.exponent) : ojson(nullptr)},
          {"noise_floor", fit.noise_floor},
          {"rate_bound", e.exact(lim.multiplicity_bound)},
          {"rank_rate_bound", e.exact(lim.rate_bound())},
          {"points", pts}};
}

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

std::vector<CheckResult> run_checks(const StochasticGame& g, const Rational& lam, const Rational& eps) {
  std::vector<CheckResult> out;
  const std::size_t n = g.num_states();
  auto add = [&](std::string name, const std::function<bool(std::string&)>& f) {
    CheckResult c{std::move(name), true, ""};
    try {
      c.ok = f(c.detail);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.detail = ex.what();
    }
    out.push_back(std::move(c));
  };
  const RationalArray arr = evaluate_lambda(data_array(g), lam);
  const RationalAux aux = aux_matrices(arr);
  const DiscountedValues dv = discounted_values(g, lam, eps);
  const auto& z = dv.values;
  const Rational& err = dv.error_bound;

  add("round_trip", [&](std::string&) { return parse_game(render(g)) == g; });
  add("kronecker_leibniz_matches_entrywise", [&](std::string& d) {
    if (n > 5) {
      d = "skipped for more than 5 states";
      return true;
    }
    return aux_matrices(arr, KronMethod::leibniz) == aux;
  });
  add("delta0_entries_at_least_lambda_pow_n", [&](std::string&) {
    const Rational bound = pow(lam, static_cast<unsigned>(n));
    for (const auto& x : aux.delta0().entries())
      if ((n % 2 ? Rational(-x) : x) < bound) return false;
    return true;
  });
  add("absorbing_states_scale_delta0", [&](std::string&) {
    for (std::size_t k = 0; k < n; ++k)
      if (g.is_absorbing(k)) {
        RationalMatrix expect = aux.delta0();
        expect *= g.state(k).payoff(0, 0);
        if (!(aux.state(k) == expect)) return false;
      }
    return true;
  });
  add("value_is_zero_of_pencil_game", [&](std::string& d) {
    for (std::size_t k = 0; k < n; ++k) {
      if (is_zero(err)) {
        if (!is_zero(game_value_at(aux, k, z[k]))) return false;
      } else if (sgn(game_value_at(aux, k, z[k] - err)) < 0 || sgn(game_value_at(aux, k, z[k] + err)) > 0) {
        d = "sign test failed at state " + g.state(k).name;
        return false;
      }
    }
    return true;
  });
  add("reduced_array_chain", [&](std::string& d) {
    ReducedArray r = reduce_array(g, lam, z, kernel_tolerance(g, err));
    for (std::size_t k = 0; k < n; ++k) {
      const Rational lo = z[k] - err, hi = z[k] + err;
      if (!rank_drop_within(r.aux.state(k), r.aux.delta0(), lo, hi)) {
        d = "no rank drop near the value of " + g.state(k).name;
        return false;
      }
      UniPoly p = char_poly_reduced(r, k).poly;
      bool root = is_zero(err) ? is_zero(p(z[k])) : (is_zero(p(lo)) || !real_roots(p, lo, hi, Rational(hi - lo)).empty());
      if (!root) {
        d = "reduced determinant has no root near the value of " + g.state(k).name;
        return false;
      }
    }
    return true;
  });
  add("kernels_certify", [&](std::string&) {
    ReducedArray r = reduce_array(g, lam, z, kernel_tolerance(g, err));
    return kernels_valid_at(g, r.kernels, lam, z, kernel_tolerance(g, err));
  });
  return out;
}

ojson cmd_check(const StochasticGame& g, const Options& o, const Emit& e, bool& all_ok) {
  std::vector<Rational> lambdas;
  for (const auto& t : o.check_lambdas) lambdas.push_back(flag_rational("--lambda", t));
  if (lambdas.empty()) lambdas = {Rational(1, 2), Rational(1, 4)};
  const Rational eps = epsilon_or(o, Rational(1) / Rational(mpz_class(1) << 48));
  ojson runs = ojson::array();
  all_ok = true;
  for (const auto& lam : lambdas) {
    require_discount(lam);
    ojson checks = ojson::array();
    for (const auto& c : run_checks(g, lam, eps)) {
      all_ok = all_ok && c.ok;
      ojson j{{"name", c.name}, {"ok", c.ok}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      checks.push_back(std::move(j));
    }
    runs.push_back({{"lambda", e.exact(lam)}, {"checks", checks}});
  }
  return {{"epsilon", e.exact(eps)}, {"runs", runs}, {"all_passed", all_ok}};
}

int write_report(const std::string& text, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.out_path.empty()) {
    out << text;
    return exit_ok;
  }
  std::ofstream f(o.out_path);
  if (!f) {
    err << "error: cannot write " << o.out_path << "\n";
    return exit_usage;
  }
  f << text;
  return exit_ok;
}

}  // namespace

StochasticGame kohlberg_family(std::size_t p) {
  if (p == 0) throw std::invalid_argument("kohlberg_family: p must be positive");
  StateData s1{"s1", {}, {}, RationalMatrix(p, p), std::vector<RationalMatrix>(3, RationalMatrix(p, p))};
  for (std::size_t i = 0; i < p; ++i) {
    s1.actions1.push_back("r" + std::to_string(i + 1));
    s1.actions2.push_back("c" + std::to_string(i + 1));
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) {
        s1.payoff(i, j) = 1;
        s1.transitions[1](i, j) = 1;
      } else {
        s1.transitions[j > i ? 2 : 0](i, j) = 1;
      }
    }
  }
  auto absorbing = [](std::string name, long payoff, std::size_t self) {
    StateData s{std::move(name), {"a"}, {"b"}, RationalMatrix{{Rational(payoff)}},
                std::vector<RationalMatrix>(3, RationalMatrix(1, 1))};
    s.transitions[self](0, 0) = 1;
    return s;
  };
  return StochasticGame({s1, absorbing("s2", 1, 1), absorbing("s3", 0, 2)});
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discounted and limit values of zero-sum stochastic games", "stochmep"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out_path, "Write the report to this file");
  app.add_option("--digits", o.digits, "Significant digits of decimal renderings")->check(CLI::Range(1, 1000));

  auto game_arg = [&](CLI::App* c) { c->add_option("game", o.file, "Game file (- for standard input)")->required(); };
  auto state_opt = [&](CLI::App* c) { c->add_option("--state", o.state, "State, counted from 1")->required(); };
  auto source_opt = [&](CLI::App* c) {
    c->add_option("--source", o.source, "Characterising polynomial")->check(CLI::IsMember({"reduced", "global"}));
  };
  auto eps_opt = [&](CLI::App* c) { c->add_option("--eps", o.eps, "Error bound for discounted values"); };

  CLI::App* solve = app.add_subcommand("solve", "Discounted values and Shapley-Snow kernels");
  game_arg(solve);
  solve->add_option("--lambda", o.lambda, "Discount factor in (0,1]")->required();
  eps_opt(solve);

  CLI::App* aux = app.add_subcommand("aux", "Auxiliary matrices");
  game_arg(aux);
  aux->add_option("--lambda", o.lambda, "Rational discount factor or 'symbolic'");

  CLI::App* charpoly = app.add_subcommand("charpoly", "Characterising polynomial of one state");
  game_arg(charpoly);
  state_opt(charpoly);
  source_opt(charpoly);
  charpoly->add_option("--lambda", o.lambda, "Discount factor where kernels are chosen (default 2^-24)");
  eps_opt(charpoly);

  CLI::App* limit = app.add_subcommand("limit", "Limit value as lambda vanishes");
  game_arg(limit);
  state_opt(limit);
  source_opt(limit);
  limit->add_option("--schedule", o.schedule, "Strictly decreasing discount factors (default 2^-4 ... 2^-24)");
  eps_opt(limit);

  CLI::App* rate = app.add_subcommand("rate", "Fitted convergence exponent");
  game_arg(rate);
  state_opt(rate);
  source_opt(rate);
  rate->add_option("--schedule", o.schedule, "Strictly decreasing discount factors, at least four");
  eps_opt(rate);

  CLI::App* check = app.add_subcommand("check", "Run the invariant checks on a game");
  game_arg(check);
  check->add_option("--lambda", o.check_lambdas, "Discount factors to check at (default 1/2 1/4)");
  eps_opt(check);

  CLI::App* family = app.add_subcommand("family", "Print Kohlberg's p x p absorbing game");
  family->add_option("--size", o.size, "p")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  const Emit emit{o.digits};
  try {
    if (family->parsed()) return write_report(render(kohlberg_family(o.size)), o, out, err);
    GameDocument doc = read_document(o.file);
    ojson rep;
    bool ok = true;
    if (solve->parsed()) {
      rep = cmd_solve(need_game(doc), o, emit);
    } else if (aux->parsed()) {
      rep = cmd_aux(doc, o, emit);
    } else if (charpoly->parsed()) {
      rep = cmd_charpoly(need_game(doc), o, emit);
    } else if (limit->parsed()) {
      rep = cmd_limit(need_game(doc), o, emit);
    } else if (rate->parsed()) {
      rep = cmd_rate(need_game(doc), o, emit);
    } else {
      rep = cmd_check(need_game(doc), o, emit, ok);
    }
    ojson full{{"command", app.get_subcommands().front()->get_name()}};
    full.update(rep);
    const int code = write_report(pretty(full), o, out, err);
    if (code != exit_ok) return code;
    if (!ok) {
      err << "error: invariant checks failed\n";
      return exit_infeasible;
    }
    return exit_ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const NumericInfeasible& e) {
    err << "error: " << e.what() << "\n";
    return exit_infeasible;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_infeasible;
  } catch (const KernelNotFound& e) {
    err << "error: " << e.what() << "\n";
    return exit_infeasible;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_infeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace stochmep
