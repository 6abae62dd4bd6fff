#include <doctest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include <unistd.h>

#include "goldgen/cli.hpp"
#include "goldgen/errors.hpp"
#include "goldgen/schema.hpp"
#include "oracles.hpp"

using namespace goldgen;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "goldgen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("goldgen_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    write_file_atomic(path / name, content);
    return file(name);
  }
};

}  // namespace

TEST_CASE("schema validator") {
  const auto& schema = run_config_schema();
  CHECK(validate_schema(Json::parse(R"({"n": 3, "seed": {"kind": "goldfish"}})"), schema).empty());
  CHECK(validate_schema(Json::parse(R"({"seed": {"a": [0.5, 0.1]}, "mu": [1, 2]})"), schema).empty());
  CHECK(validate_schema(Json::parse(R"({"seed": {"a": 0.5}})"), schema).empty());

  const auto bad = validate_schema(
      Json::parse(R"({"n": 1, "colour": 2, "seed": {"kind": "toad", "ia_sign": 0},
                     "positions": [[1, 0, 0]], "tolerances": {"ode_rel": 0}, "mu": [0]})"),
      schema);
  std::set<std::string> where;
  for (const auto& v : bad) where.insert(v.where);
  CHECK(where == std::set<std::string>{"/n", "/colour", "/seed/kind", "/seed/ia_sign", "/positions/0",
                                       "/tolerances/ode_rel", "/mu/0"});
  CHECK(!validate_schema(Json::parse("[]"), schema).empty());
  CHECK(!validate_schema(Json::parse(R"({"depth": 1.5})"), schema).empty());
  CHECK(validate_schema(Json::parse(R"({"depth": 2.0})"), schema).empty());
}

TEST_CASE("config parsing") {
  const RunConfig c = parse_run_config(Json::parse(R"({
      "seed": {"kind": "linear_seed", "a": [0.5, 0], "ia_sign": -1},
      "positions": [[1, 0], [-1, 0.5]], "velocities": [0, [0, 1]],
      "mu": [2], "time": {"t1": 3, "dt_out": 0.5},
      "tolerances": {"root_tol": 1e-11}, "rng_seed": 4, "output": "x.csv"})"));
  CHECK(c.n == 2);
  CHECK(c.seed.kind == SeedKind::linear_seed);
  CHECK(c.seed.a == Cplx(0.5, 0.0));
  CHECK(c.seed.ia_sign == -1);
  CHECK(c.velocities == CVec{0.0, Cplx(0.0, 1.0)});
  CHECK(c.mu_address() == MuAddress(2, {2}));
  CHECK(c.root_options().root_tol == 1e-11);
  CHECK(c.root_options().rng_seed == 4);
  CHECK(c.t1 == 3.0);
  CHECK(*c.output == "x.csv");

  auto fails = [](const char* text) { return parse_run_config(Json::parse(text)); };
  CHECK_THROWS_AS(fails(R"({"positions": [1, 2], "velocities": [1, 2, 3]})"), ConfigError);
  CHECK_THROWS_AS(fails(R"({"n": 3, "positions": [1, 2]})"), ConfigError);
  CHECK_THROWS_AS(fails(R"({"positions": [1, 2], "mu": [3]})"), ConfigError);
  CHECK_THROWS_AS(fails(R"({"mu": [1]})"), ConfigError);
  CHECK_THROWS_AS(fails(R"({"time": {"t0": 1, "t1": 1}})"), ConfigError);
  CHECK_THROWS_AS(fails(R"({"positions": [1, 2], "depth": 0, "mu": [1]})"), ConfigError);
  CHECK_THROWS_AS(parse_json_text("{", "inline"), ConfigError);
}

TEST_CASE("file formats round trip") {
  TempDir tmp;
  Trajectory tr;
  tr.times = {0.0, 0.1, 1.0 / 3.0};
  for (double t : tr.times)
    tr.states.push_back({{Cplx(t, -1.0 / 7.0), Cplx(std::sqrt(2.0), t * t)}, {Cplx(1e-300, 3e10), Cplx(-0.0, 1.0)}, t});
  write_file_atomic(tmp.path / "traj.csv", trajectory_csv(tr));
  const CsvSeries s = read_series_csv(tmp.path / "traj.csv");
  REQUIRE(s.positions.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.positions.times[i] == tr.times[i]);
    CHECK(s.positions.values[i] == tr.states[i].x);
    CHECK(s.velocities[i] == tr.states[i].v);
  }
  CHECK(trajectory_csv(tr).substr(0, trajectory_csv(tr).find('\n')) ==
        "t,x1_re,x1_im,x2_re,x2_im,v1_re,v1_im,v2_re,v2_im");

  const LabeledPath lp = s.positions;
  const CsvSeries back = parse_series_csv(labeled_path_csv(lp));
  CHECK(back.positions.values == lp.values);
  CHECK(back.velocities.empty());

  CHECK_THROWS_AS(parse_series_csv("t,x1_re\n0,1\n"), ConfigError);
  CHECK_THROWS_AS(parse_series_csv("t,x1_re,x1_im\n0,1,oops\n"), ConfigError);
  CHECK_THROWS_AS(parse_series_csv("t,x1_re,x1_im\n1,1,0\n0,1,0\n"), ConfigError);

  const auto tree = generation_tree(MonicPoly({Cplx(0.1, 1.0 / 3.0), -1.0}), 2);
  const Json j = Json::parse(tree_to_json(tree).dump());
  CHECK(j["nodes"].size() == tree.nodes.size());
  auto it = tree.nodes.begin();
  for (const auto& node : j["nodes"]) {
    CHECK(node["mu"].get<std::vector<std::uint64_t>>() == it->first.indices);
    CHECK(cvec_from_json(node["coeffs"]) == it->second.poly.coeffs());
    CHECK(cvec_from_json(node["zeros"]) == it->second.zeros.values());
    ++it;
  }
  const Json spec = spectrum_to_json(SpectrumReport{{1.0, Cplx(2.0, -1.0)}, 1e-15});
  CHECK(cvec_from_json(spec["eigenvalues"]) == CVec{1.0, Cplx(2.0, -1.0)});
}

TEST_CASE("generate command") {
  TempDir tmp;
  const auto out = tmp.file("tree.json");
  const Run r = run({"generate", "--seed-coeffs", "0,-1", "--depth", "3", "-o", out});
  CHECK(r.code == 0);
  const Json j = parse_json_text(read_text_file(out), out);
  CHECK(j["nodes"].size() == 14);
  CHECK(j["depth"] == 3);

  const Run d0 = run({"generate", "--seed-coeffs", "[[0,0],[-1,0]]", "--depth", "0"});
  CHECK(d0.code == 0);
  CHECK(Json::parse(d0.out)["nodes"].empty());

  const Run budget = run({"generate", "--seed-coeffs", "0,-1", "--depth", "3", "--node-budget", "10"});
  CHECK(budget.code == 3);
  CHECK(budget.err.find("budget") != std::string::npos);

  const Run failing = run({"generate", "--seed-coeffs", "-3,2", "--depth", "1"});
  CHECK(failing.code == 3);
  CHECK(failing.err.find("mu=(2)") != std::string::npos);

  CHECK(run({"generate", "--seed-coeffs", "0,-1"}).code == 2);
  CHECK(run({"generate", "--depth", "1"}).code == 2);
}

TEST_CASE("simulate and solve") {
  TempDir tmp;
  const std::string cfg = tmp.write("iso.json", R"({
      "seed": {"kind": "iso_goldfish", "omega": 1},
      "positions": [[0.3, 0.1], [-0.5, 0.2], [0.1, -0.6]],
      "velocities": [[0.2, 0], [0, -0.3], [-0.1, 0.1]],
      "time": {"t0": 0, "t1": 6.283185307179586, "dt_out": 0.06283185307179587},
      "tolerances": {"ode_rel": 1e-11, "ode_abs": 1e-13}})");

  SUBCASE("isochronous goldfish closes after one period") {
    const Run r = run({"simulate", "--config", cfg});
    REQUIRE(r.code == 0);
    const CsvSeries s = parse_series_csv(r.out);
    CHECK(s.positions.size() == 101);
    CHECK(set_distance(s.positions.values.back(), s.positions.values.front()) < 1e-6);
  }

  SUBCASE("flags override the file") {
    const Run r = run({"simulate", "--config", cfg, "--t1", "1", "--dt-out", "0.5"});
    REQUIRE(r.code == 0);
    CHECK(parse_series_csv(r.out).positions.size() == 3);
  }

  SUBCASE("generation 1: simulate and solve agree") {
    const std::vector<std::string> common = {
        "--kind", "linear_seed", "--a", "0.5", "--mu", "3",
        "--positions", "[0.8,0.1],[-0.9,0.5],[0.2,-1.1]", "--velocities", "[0.2,0],[0,-0.3],[-0.1,0.1]",
        "--t1", "6.283185307179586", "--dt-out", "0.006283185307179587", "--ode-rel", "1e-11", "--ode-abs", "1e-13"};
    std::vector<std::string> sim = {"simulate"}, sol = {"solve"};
    sim.insert(sim.end(), common.begin(), common.end());
    sol.insert(sol.end(), common.begin(), common.end());
    const Run a = run(sim), b = run(sol);
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    const CsvSeries sa = parse_series_csv(a.out), sb = parse_series_csv(b.out);
    REQUIRE(sa.positions.size() == sb.positions.size());
    double err = 0.0;
    for (std::size_t i = 0; i < sa.positions.size(); ++i)
      err = std::max(err, oracle::max_diff(sa.positions.values[i], sb.positions.values[i]));
    CHECK(err < 1e-6);
  }

  SUBCASE("depth 0 solve is the closed form") {
    const Run r = run({"solve", "--kind", "linear_seed", "--a", "0", "--positions", "1,-1", "--velocities",
                       "[0,1],[0.5,0]", "--t1", "1", "--dt-out", "0.25"});
    REQUIRE(r.code == 0);
    const CsvSeries s = parse_series_csv(r.out);
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      const auto cf = solve_linear_seed(CVec{1.0, -1.0}, CVec{kI, 0.5}, 0.0, 1, s.positions.times[i]).x;
      CHECK(oracle::max_diff(s.positions.values[i], cf) < 1e-14);
    }
  }

  SUBCASE("coarse grid is reported") {
    const Run r = run({"solve", "--kind", "linear_seed", "--a", "0", "--mu", "2", "--positions",
                       "[0.8,0.1],[-0.9,0.5],[0.2,-1.1]", "--velocities", "[2,0],[0,-2],[-1.5,1]",
                       "--t1", "6.283185307179586", "--dt-out", "0.7"});
    CHECK(r.code == 3);
    CHECK(r.err.find("dt_out") != std::string::npos);
  }

  SUBCASE("collision") {
    const Run r = run({"simulate", "--kind", "goldfish", "--positions", "1,-1", "--velocities", "-1,1", "--t1", "1",
                       "--dt-out", "0.1"});
    CHECK(r.code == 3);
    CHECK(r.err.find("collide") != std::string::npos);
  }

  SUBCASE("bad input") {
    CHECK(run({"simulate", "--config", tmp.write("bad.json", "{ \"seed\": ")}).code == 2);
    CHECK(run({"simulate", "--config", tmp.file("missing.json")}).code == 2);
    CHECK(run({"simulate", "--config", cfg, "--kind", "toad"}).code == 2);
    CHECK(run({"simulate", "--config", cfg, "--sep-tol", "-1"}).code == 2);
    CHECK(run({"simulate"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }
}

TEST_CASE("period command") {
  TempDir tmp;
  LabeledPath constant;
  for (int k = 0; k <= 400; ++k) {
    constant.times.push_back(k * 0.05 * 3.141592653589793);
    constant.values.push_back(CVec{1.0, Cplx(0.0, 2.0)});
  }
  const auto file = tmp.write("const.csv", labeled_path_csv(constant));
  const Run r = run({"period", file});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["multiplier"] == 1);

  LabeledPath drift = constant;
  for (std::size_t k = 0; k < drift.size(); ++k) drift.values[k][0] = drift.times[k];
  const Run d = run({"period", tmp.write("drift.csv", labeled_path_csv(drift)), "--p-max", "2"});
  CHECK(d.code == 1);
  CHECK(run({"period"}).code == 2);
}

TEST_CASE("verify command") {
  const Run ok = run({"verify", "identities", "--n", "8"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS criterion 1") != std::string::npos);
  const Run strict = run({"verify", "identities", "--n", "4", "--tol", "1e-30"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("FAIL") != std::string::npos);
  CHECK(run({"verify", "everything"}).code == 2);
  const Run h = run({"verify", "hermite", "--n", "10"});
  CHECK(h.code == 0);
}
