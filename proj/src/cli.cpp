#include "goldgen/cli.hpp"

#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "goldgen/errors.hpp"
#include "goldgen/verify.hpp"

namespace goldgen {

namespace {

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output) write_file_atomic(*cfg.output, content);
  else out << content;
}

std::vector<double> config_grid(const RunConfig& cfg) { return uniform_grid(cfg.t0, cfg.t1, cfg.dt_out); }

std::size_t generation_depth(const RunConfig& cfg, const char* cmd) {
  if (!cfg.mu.empty() && cfg.depth && *cfg.depth != cfg.mu.size())
    throw ConfigError(std::string(cmd) + ": depth must equal the length of mu");
  return cfg.mu.empty() ? cfg.depth.value_or(0) : cfg.mu.size();
}

}  // namespace

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.seed_coeffs) throw ConfigError("generate: seed_coeffs is required");
  if (!cfg.depth) throw ConfigError("generate: depth is required");
  TreeOptions opts;
  opts.filter = cfg.mu_address();
  opts.node_budget = cfg.node_budget;
  opts.roots = cfg.root_options();
  GenerationTree tree = [&] {
    try {
      return generation_tree(MonicPoly(*cfg.seed_coeffs), *cfg.depth, opts);
    } catch (const TreeBudgetExceeded&) {
      throw;
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("generate: seed (mu=()) failed: ") + e.what());
    }
  }();
  if (!tree.failures.empty()) {
    std::string msg = "generate: " + std::to_string(tree.failures.size()) + " node(s) failed";
    const auto& [addr, why] = *tree.failures.begin();
    msg += ", first at mu=" + addr.to_string() + ": " + why;
    throw NumericalError(msg);
  }
  emit(cfg, tree_to_json(tree).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const std::size_t depth = generation_depth(cfg, "simulate");
  const PhaseState seed_state = cfg.seed_state();
  ModelSpec spec{cfg.seed, depth, {}};
  PhaseState start = seed_state;
  if (auto mu = cfg.mu_address()) {
    spec.mu = *mu;
    start = build_initial_state(seed_state, *mu, cfg.root_options());
  }
  const auto grid = config_grid(cfg);
  emit(cfg, trajectory_csv(integrate(spec, start, grid, cfg.integrator_options())), out);
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const std::size_t depth = generation_depth(cfg, "solve");
  if (depth > 0 && cfg.mu.empty()) throw ConfigError("solve: a generation run needs mu");
  const MuAddress mu = cfg.mu.empty() ? MuAddress() : *cfg.mu_address();
  const auto grid = config_grid(cfg);
  // TrackingAmbiguity messages already point at dt_out
  emit(cfg, labeled_path_csv(solve_generation_path(cfg.seed, cfg.seed_state(), mu, grid, cfg.path_options())), out);
  return kExitOk;
}

int cmd_period(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.period_input) throw ConfigError("period: no input CSV given");
  const CsvSeries series = read_series_csv(*cfg.period_input);
  const std::size_t n = series.positions.values.front().size();
  unsigned p_max = cfg.p_max;
  if (p_max == 0) p_max = n <= 12 ? static_cast<unsigned>(factorial(n)) : 1000u;
  const PeriodReport rep = detect_period(series.positions, cfg.base_period, p_max, cfg.tol.period_tol);
  emit(cfg, period_report_to_json(rep).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::size_t n, double tol, std::uint64_t seed, std::ostream& out) {
  VerifyOptions opts;
  opts.n = n;
  opts.tol = tol;
  opts.seed = seed;
  bool ok = true;
  for (const auto& rep : run_suite(suite, opts)) {
    out << format_criterion(rep) << '\n';
    for (const auto& c : rep.checks) out << format_check(c) << '\n';
    ok = ok && rep.passed();
  }
  return ok ? kExitOk : kExitCheckFailed;
}

namespace {

// Flag values that hold JSON arrays may drop the outer brackets:
// --mu 1,2   --positions [1,0],[-1,0]
Json json_flag(const std::string& text, bool list) {
  if (list) {
    Json j = Json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.is_array()) return j;
    return parse_json_text("[" + text + "]", "command-line flag");
  }
  return parse_json_text(text, "command-line flag");
}

struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;  // JSON pointer -> raw flag text

  void add(CLI::App* app, const std::string& flag, const std::string& pointer, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, pointer](const std::string& v) { values[pointer] = v; }, help);
  }

  Json build() const {
    Json j = config.empty() ? Json::object() : load_config_json(config);
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    for (const auto& [ptr, raw] : values) {
      static const std::set<std::string> strings = {"/output", "/period/input", "/seed/kind"};
      static const std::set<std::string> lists = {"/seed_coeffs", "/positions", "/velocities", "/mu"};
      Json v = strings.count(ptr) ? Json(raw) : json_flag(raw, lists.count(ptr) > 0);
      j[Json::json_pointer(ptr)] = std::move(v);
    }
    return j;
  }
};

void add_config_flags(CLI::App* app, Overrides& o) {
  app->add_option("-c,--config", o.config, "JSON run configuration");
  o.add(app, "--n", "/n", "degree N");
  o.add(app, "--kind", "/seed/kind", "seed model: goldfish, iso_goldfish, linear_seed");
  o.add(app, "--omega", "/seed/omega", "iso_goldfish frequency");
  o.add(app, "--a", "/seed/a", "linear_seed parameter, number or [re,im]");
  o.add(app, "--ia-sign", "/seed/ia_sign", "sign of the i*a*x term (+1 or -1)");
  o.add(app, "--seed-coeffs", "/seed_coeffs", "seed coefficients y1..yN as [re,im] pairs");
  o.add(app, "--depth", "/depth", "generation depth");
  o.add(app, "--mu", "/mu", "branch indices, e.g. 2,5");
  o.add(app, "--positions", "/positions", "initial positions as [re,im] pairs");
  o.add(app, "--velocities", "/velocities", "initial velocities as [re,im] pairs");
  o.add(app, "--t0", "/time/t0", "start time");
  o.add(app, "--t1", "/time/t1", "end time");
  o.add(app, "--dt-out", "/time/dt_out", "output spacing");
  o.add(app, "--ode-rel", "/tolerances/ode_rel", "integrator relative tolerance");
  o.add(app, "--ode-abs", "/tolerances/ode_abs", "integrator absolute tolerance");
  o.add(app, "--root-tol", "/tolerances/root_tol", "root residual tolerance");
  o.add(app, "--sep-tol", "/tolerances/sep_tol", "relative separation below which zeros coincide");
  o.add(app, "--period-tol", "/tolerances/period_tol", "relative closure tolerance for period detection");
  o.add(app, "--node-budget", "/node_budget", "largest tree allowed");
  o.add(app, "--rng-seed", "/rng_seed", "seed for root-finder starting points");
  o.add(app, "-o,--output", "/output", "output file (default: stdout)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"goldgen: generations of monic polynomials and goldfish-type many-body models"};
  app.require_subcommand(1);

  Overrides o;
  std::string command;
  auto add_model_cmd = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_config_flags(sub, o);
    sub->callback([&command, name] { command = name; });
    return sub;
  };
  add_model_cmd("generate", "expand the generation tree of a seed polynomial (JSON)");
  add_model_cmd("simulate", "integrate the equations of motion (CSV)");
  add_model_cmd("solve", "labelled zero paths by root extraction (CSV)");
  CLI::App* period = add_model_cmd("period", "detect the period multiplier of a path CSV (JSON)");
  period->add_option_function<std::string>(
      "input", [&o](const std::string& v) { o.values["/period/input"] = v; }, "path CSV");
  period->add_option_function<std::string>(
      "-T,--base-period", [&o](const std::string& v) { o.values["/period/base_period"] = v; },
      "base period (default 2pi)");
  period->add_option_function<std::string>(
      "--p-max", [&o](const std::string& v) { o.values["/period/p_max"] = v; }, "largest multiplier (default N!)");

  std::string suite;
  std::size_t vn = 0;
  double vtol = 0.0;
  std::uint64_t vseed = VerifyOptions{}.seed;
  CLI::App* verify = app.add_subcommand("verify", "run acceptance suites; exit 1 if any check fails");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", vn, "problem size (suite dependent)");
  verify->add_option("--tol", vtol, "replace the residual thresholds")->check(CLI::PositiveNumber);
  verify->add_option("--rng-seed", vseed, "seed for the random test data");
  verify->callback([&command] { command = "verify"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "goldgen: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (command == "verify") return cmd_verify(suite, vn, vtol, vseed, out);
    const RunConfig cfg = parse_run_config(o.build());
    if (command == "generate") return cmd_generate(cfg, out);
    if (command == "simulate") return cmd_simulate(cfg, out);
    if (command == "solve") return cmd_solve(cfg, out);
    return cmd_period(cfg, out);
  } catch (const ConfigError& e) {
    err << "goldgen: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "goldgen: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoPeriodFound& e) {
    err << "goldgen: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const CollisionError& e) {
    err << "goldgen: " << e.what() << " (level " << e.level() << ", t=" << e.time() << ")\n";
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "goldgen: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Json::exception& e) {
    err << "goldgen: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace goldgen
