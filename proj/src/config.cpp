#include "goldgen/config.hpp"

#include <sstream>

#include "goldgen/errors.hpp"
#include "goldgen/schema.hpp"

namespace goldgen {

RootOptions RunConfig::root_options() const {
  RootOptions r;
  r.root_tol = tol.root_tol;
  r.sep_tol = tol.sep_tol;
  r.rng_seed = rng_seed;
  return r;
}

IntegratorOptions RunConfig::integrator_options() const {
  IntegratorOptions o;
  o.rel_tol = tol.ode_rel;
  o.abs_tol = tol.ode_abs;
  o.sep_tol = tol.sep_tol;
  return o;
}

PathOptions RunConfig::path_options() const {
  PathOptions p;
  p.roots = root_options();
  return p;
}

std::optional<MuAddress> RunConfig::mu_address() const {
  if (mu.empty()) return std::nullopt;
  return MuAddress(n, mu);
}

PhaseState RunConfig::seed_state() const {
  if (positions.empty()) throw ConfigError("positions are required for this command");
  PhaseState s{positions, velocities, t0};
  if (s.v.empty()) s.v.assign(s.x.size(), Cplx{});
  return s;
}

namespace {

void agree_on_n(RunConfig& cfg, std::size_t len, const char* field) {
  if (cfg.n == 0) cfg.n = len;
  else if (cfg.n != len)
    throw ConfigError(std::string(field) + " has " + std::to_string(len) + " entries but n = " +
                      std::to_string(cfg.n));
}

}  // namespace

RunConfig parse_run_config(const Json& j) {
  const auto violations = validate_schema(j, run_config_schema());
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& v : violations) os << "\n  " << v.where << ": " << v.what;
    throw ConfigError(os.str());
  }

  RunConfig cfg;
  if (j.contains("n")) cfg.n = j["n"].get<std::size_t>();
  if (j.contains("seed")) {
    const auto& s = j["seed"];
    if (s.contains("kind")) cfg.seed.kind = seed_kind_from_string(s["kind"].get<std::string>());
    if (s.contains("omega")) cfg.seed.omega = s["omega"].get<double>();
    if (s.contains("a")) cfg.seed.a = cplx_from_json(s["a"]);
    if (s.contains("ia_sign")) cfg.seed.ia_sign = s["ia_sign"].get<int>();
  }
  if (j.contains("seed_coeffs")) {
    cfg.seed_coeffs = cvec_from_json(j["seed_coeffs"]);
    agree_on_n(cfg, cfg.seed_coeffs->size(), "seed_coeffs");
  }
  if (j.contains("positions")) {
    cfg.positions = cvec_from_json(j["positions"]);
    agree_on_n(cfg, cfg.positions.size(), "positions");
  }
  if (j.contains("velocities")) {
    cfg.velocities = cvec_from_json(j["velocities"]);
    if (cfg.positions.empty()) throw ConfigError("velocities given without positions");
    agree_on_n(cfg, cfg.velocities.size(), "velocities");
  }
  if (j.contains("depth")) cfg.depth = j["depth"].get<std::size_t>();
  if (j.contains("mu")) {
    cfg.mu = j["mu"].get<std::vector<std::uint64_t>>();
    if (!cfg.mu.empty()) {
      if (cfg.n == 0) throw ConfigError("mu needs the degree n (or positions / seed_coeffs)");
      try {
        (void)MuAddress(cfg.n, cfg.mu);
      } catch (const DomainError& e) {
        throw ConfigError(std::string("mu: ") + e.what());
      }
    }
    if (cfg.depth && *cfg.depth < cfg.mu.size())
      throw ConfigError("mu is longer than depth");
  }
  if (j.contains("time")) {
    const auto& t = j["time"];
    if (t.contains("t0")) cfg.t0 = t["t0"].get<double>();
    if (t.contains("t1")) cfg.t1 = t["t1"].get<double>();
    if (t.contains("dt_out")) cfg.dt_out = t["dt_out"].get<double>();
  }
  if (!(cfg.t1 > cfg.t0)) throw ConfigError("time.t1 must exceed time.t0");
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    auto take = [&](const char* key, double& dst) {
      if (t.contains(key)) dst = t[key].get<double>();
    };
    take("ode_rel", cfg.tol.ode_rel);
    take("ode_abs", cfg.tol.ode_abs);
    take("root_tol", cfg.tol.root_tol);
    take("sep_tol", cfg.tol.sep_tol);
    take("period_tol", cfg.tol.period_tol);
  }
  if (j.contains("node_budget")) cfg.node_budget = j["node_budget"].get<std::size_t>();
  if (j.contains("rng_seed")) cfg.rng_seed = j["rng_seed"].get<std::uint64_t>();
  if (j.contains("period")) {
    const auto& p = j["period"];
    if (p.contains("input")) cfg.period_input = p["input"].get<std::string>();
    if (p.contains("base_period")) cfg.base_period = p["base_period"].get<double>();
    if (p.contains("p_max")) cfg.p_max = p["p_max"].get<unsigned>();
  }
  if (j.contains("output")) cfg.output = j["output"].get<std::string>();
  return cfg;
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in " + origin + ": " + e.what());
  }
}

Json load_config_json(const std::filesystem::path& file) {
  return parse_json_text(read_text_file(file), file.string());
}

}  // namespace goldgen
