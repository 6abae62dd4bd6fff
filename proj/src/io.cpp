#include "goldgen/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "goldgen/errors.hpp"

namespace goldgen {

Json to_json(Cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(std::span<const Cplx> v) {
  Json arr = Json::array();
  for (Cplx z : v) arr.push_back(to_json(z));
  return arr;
}

Cplx cplx_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("expected a complex number as [re, im], got " + j.dump());
}

CVec cvec_from_json(const Json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of complex numbers, got " + j.dump());
  CVec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(cplx_from_json(e));
  return v;
}

Json tree_to_json(const GenerationTree& tree) {
  Json nodes = Json::array();
  for (const auto& [addr, node] : tree.nodes) {
    nodes.push_back({{"mu", addr.indices},
                     {"coeffs", to_json(node.poly.coeffs())},
                     {"zeros", to_json(node.zeros.values())}});
  }
  Json out{{"seed", to_json(tree.seed.poly.coeffs())},
           {"seed_zeros", to_json(tree.seed.zeros.values())},
           {"depth", tree.depth},
           {"nodes", std::move(nodes)}};
  if (!tree.failures.empty()) {
    Json fails = Json::array();
    for (const auto& [addr, why] : tree.failures) fails.push_back({{"mu", addr.indices}, {"error", why}});
    out["failures"] = std::move(fails);
  }
  return out;
}

Json spectrum_to_json(const SpectrumReport& rep) {
  return {{"eigenvalues", to_json(rep.eigenvalues)}, {"max_residual", rep.max_residual}};
}

Json period_report_to_json(const PeriodReport& rep) {
  return {{"base_period", rep.base_period}, {"multiplier", rep.multiplier}, {"residual", rep.residual}};
}

namespace {

void put(std::ostringstream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << ',' << buf;
}

void header(std::ostringstream& os, std::size_t n, bool with_velocity) {
  os << 't';
  for (std::size_t k = 1; k <= n; ++k) os << ",x" << k << "_re,x" << k << "_im";
  if (with_velocity)
    for (std::size_t k = 1; k <= n; ++k) os << ",v" << k << "_re,v" << k << "_im";
  os << '\n';
}

void row(std::ostringstream& os, double t, const CVec& x, const CVec* v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", t);
  os << buf;
  for (Cplx z : x) {
    put(os, z.real());
    put(os, z.imag());
  }
  if (v)
    for (Cplx z : *v) {
      put(os, z.real());
      put(os, z.imag());
    }
  os << '\n';
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  const std::size_t n = traj.states.empty() ? 0 : traj.states.front().x.size();
  header(os, n, true);
  for (const auto& s : traj.states) row(os, s.t, s.x, &s.v);
  return os.str();
}

std::string labeled_path_csv(const LabeledPath& path) {
  std::ostringstream os;
  const std::size_t n = path.values.empty() ? 0 : path.values.front().size();
  header(os, n, false);
  for (std::size_t k = 0; k < path.size(); ++k) row(os, path.times[k], path.values[k], nullptr);
  return os.str();
}

CsvSeries parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty input");
  std::vector<std::string> cols;
  {
    std::istringstream hs(line);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  if (cols.empty() || cols.front() != "t") throw ConfigError("csv: first column must be 't'");
  std::size_t nx = 0, nv = 0;
  for (const auto& c : cols) {
    if (c.size() > 3 && c[0] == 'x' && c.ends_with("_re")) ++nx;
    if (c.size() > 3 && c[0] == 'v' && c.ends_with("_re")) ++nv;
  }
  if (nx == 0 || cols.size() != 1 + 2 * nx + 2 * nv || (nv != 0 && nv != nx))
    throw ConfigError("csv: header does not follow t,x1_re,x1_im,...[,v1_re,...]");
  for (std::size_t k = 1; k <= nx; ++k)
    if (cols[2 * k - 1] != "x" + std::to_string(k) + "_re" || cols[2 * k] != "x" + std::to_string(k) + "_im")
      throw ConfigError("csv: unexpected column order in header");

  CsvSeries out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError("csv: bad number '" + cell + "' on line " + std::to_string(lineno));
      }
    }
    if (vals.size() != cols.size())
      throw ConfigError("csv: wrong column count on line " + std::to_string(lineno));
    CVec x(nx);
    for (std::size_t k = 0; k < nx; ++k) x[k] = {vals[1 + 2 * k], vals[2 + 2 * k]};
    out.positions.times.push_back(vals[0]);
    out.positions.values.push_back(std::move(x));
    if (nv) {
      CVec v(nv);
      for (std::size_t k = 0; k < nv; ++k) v[k] = {vals[1 + 2 * nx + 2 * k], vals[2 + 2 * nx + 2 * k]};
      out.velocities.push_back(std::move(v));
    }
  }
  for (std::size_t k = 1; k < out.positions.size(); ++k)
    if (!(out.positions.times[k] > out.positions.times[k - 1]))
      throw ConfigError("csv: times must be strictly increasing");
  return out;
}

CsvSeries read_series_csv(const std::filesystem::path& file) { return parse_series_csv(read_text_file(file)); }

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& file, const std::string& content) {
  auto tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot move output into place: " + ec.message());
  }
}

}  // namespace goldgen
