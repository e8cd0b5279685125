#include "tfps/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "tfps/errors.hpp"

namespace tfps {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ValidationError("config: " + path + ": " + msg);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) bad(path + "." + it.key(), "unknown key");
  }
}

double need_number(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) bad(path, std::string("missing required field '") + key + "'");
  if (!j[key].is_number()) bad(path + "." + key, "expected a number");
  return j[key].get<double>();
}

double opt_number(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad(path + "." + key, "expected a number");
  return j[key].get<double>();
}

std::vector<double> need_array(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) bad(path, std::string("missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) bad(path + "." + key, "expected numeric entries");
    out.push_back(v.get<double>());
  }
  return out;
}

Potential read_tabulated_csv(const std::string& file, const std::string& path) {
  std::ifstream in(file);
  if (!in) bad(path, "cannot open tabulated CSV '" + file + "'");
  std::vector<double> xs, vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, v;
    if (!(ss >> x >> v)) {
      if (lineno == 1) continue;  // header row
      bad(path, "line " + std::to_string(lineno) + " of '" + file + "' is not two numbers");
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  try {
    return Potential::tabulated(std::move(xs), std::move(vs));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Potential parse_potential(const json& j, const std::string& path, const std::string& base_dir) {
  if (!j.is_object()) bad(path, "expected an object with 'family' and 'params'");
  check_keys(j, path, {"family", "params"});
  if (!j.contains("family") || !j["family"].is_string()) bad(path, "missing 'family' tag");
  std::string family = j["family"].get<std::string>();
  json params = j.value("params", json::object());
  std::string ppath = path + ".params";
  try {
    if (family == "square_well") {
      check_keys(params, ppath, {"a", "b"});
      return Potential::square_well(need_number(params, ppath, "a"),
                                    need_number(params, ppath, "b"));
    }
    if (family == "harmonic") {
      check_keys(params, ppath, {"k", "x0"});
      return Potential::harmonic(need_number(params, ppath, "k"),
                                 opt_number(params, ppath, "x0", 0.0));
    }
    if (family == "polynomial") {
      check_keys(params, ppath, {"coeffs"});
      return Potential::polynomial(need_array(params, ppath, "coeffs"));
    }
    if (family == "double_well") {
      check_keys(params, ppath, {"h", "w"});
      return Potential::double_well(need_number(params, ppath, "h"),
                                    need_number(params, ppath, "w"));
    }
    if (family == "piecewise_polynomial") {
      check_keys(params, ppath, {"breakpoints", "segments"});
      auto bp = need_array(params, ppath, "breakpoints");
      if (!params.contains("segments") || !params["segments"].is_array())
        bad(ppath, "missing array 'segments'");
      std::vector<std::vector<double>> segs;
      for (const auto& seg : params["segments"]) {
        std::vector<double> c;
        for (const auto& v : seg) c.push_back(v.get<double>());
        segs.push_back(std::move(c));
      }
      return Potential::piecewise_polynomial(std::move(bp), std::move(segs));
    }
    if (family == "tabulated") {
      check_keys(params, ppath, {"path", "x", "v"});
      if (params.contains("path")) {
        std::string file = params["path"].get<std::string>();
        if (!file.empty() && file[0] != '/') file = base_dir + "/" + file;
        return read_tabulated_csv(file, ppath);
      }
      return Potential::tabulated(need_array(params, ppath, "x"),
                                  need_array(params, ppath, "v"));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    bad(path, e.what());
  }
  bad(path + ".family", "unknown family '" + family + "'");
}

std::string hash_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a-64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  check_keys(j, "$", {"problem", "solver", "output", "sweep", "walls"});
  if (!j.contains("problem")) bad("$", "missing required block 'problem'");
  const json& prob = j["problem"];
  check_keys(prob, "$.problem",
             {"U11", "U22", "U12", "proportional", "potentials", "ensemble", "window"});

  cfg.raw.u11 = opt_number(prob, "$.problem", "U11", 1.0);
  cfg.raw.u22 = opt_number(prob, "$.problem", "U22", 1.0);
  cfg.raw.u12 = need_number(prob, "$.problem", "U12");
  if (!(cfg.raw.u11 > 0) || !(cfg.raw.u22 > 0) || !(cfg.raw.u12 > 0))
    bad("$.problem", "interaction parameters must be strictly positive");
  cfg.raw.proportional_declared = prob.value("proportional", false);

  if (!prob.contains("potentials")) bad("$.problem", "missing 'potentials'");
  const json& pots = prob["potentials"];
  check_keys(pots, "$.problem.potentials", {"V1", "V2"});
  if (!pots.contains("V1")) bad("$.problem.potentials", "missing 'V1'");
  cfg.raw.v1 = parse_potential(pots["V1"], "$.problem.potentials.V1", base_dir);
  cfg.raw.v2 = pots.contains("V2")
                   ? parse_potential(pots["V2"], "$.problem.potentials.V2", base_dir)
                   : cfg.raw.v1;

  if (!prob.contains("ensemble")) bad("$.problem", "missing 'ensemble'");
  const json& ens = prob["ensemble"];
  check_keys(ens, "$.problem.ensemble", {"N1", "N2", "mu1", "mu2"});
  bool has_n = ens.contains("N1") || ens.contains("N2");
  bool has_mu = ens.contains("mu1") || ens.contains("mu2");
  if (has_n == has_mu)
    bad("$.problem.ensemble", "exactly one ensemble payload required: {N1,N2} or {mu1,mu2}");
  if (has_n) {
    cfg.raw.ensemble = EnsembleKind::FixedN;
    cfg.raw.n1 = need_number(ens, "$.problem.ensemble", "N1");
    cfg.raw.n2 = need_number(ens, "$.problem.ensemble", "N2");
    if (cfg.raw.n1 < 0 || cfg.raw.n2 < 0)
      bad("$.problem.ensemble", "particle numbers must be nonnegative");
  } else {
    cfg.raw.ensemble = EnsembleKind::FixedMu;
    cfg.raw.mu1 = need_number(ens, "$.problem.ensemble", "mu1");
    cfg.raw.mu2 = need_number(ens, "$.problem.ensemble", "mu2");
  }

  if (prob.contains("window")) {
    auto w = prob["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
      bad("$.problem.window", "expected [lo, hi]");
    cfg.window = Interval{w[0].get<double>(), w[1].get<double>()};
    if (!(cfg.window->hi > cfg.window->lo)) bad("$.problem.window", "need hi > lo");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "$.solver",
               {"tol_root", "tol_stat", "tol_norm", "tol_energy", "tol_oracle", "max_walls",
                "scan_cells", "quad_nodes", "oracle_m", "descent_max_iter", "descent_restarts",
                "workers", "seed", "max_realizations"});
    auto& so = cfg.solver;
    so.tol.root = opt_number(s, "$.solver", "tol_root", so.tol.root);
    so.tol.stat = opt_number(s, "$.solver", "tol_stat", so.tol.stat);
    so.tol.norm = opt_number(s, "$.solver", "tol_norm", so.tol.norm);
    so.tol.energy = opt_number(s, "$.solver", "tol_energy", so.tol.energy);
    so.tol.oracle = opt_number(s, "$.solver", "tol_oracle", so.tol.oracle);
    for (double t : {so.tol.root, so.tol.stat, so.tol.norm, so.tol.energy, so.tol.oracle})
      if (!(t > 0)) bad("$.solver", "tolerances must be positive");
    so.max_walls = static_cast<int>(opt_number(s, "$.solver", "max_walls", so.max_walls));
    so.scan_cells = static_cast<int>(opt_number(s, "$.solver", "scan_cells", so.scan_cells));
    so.quad_nodes = static_cast<int>(opt_number(s, "$.solver", "quad_nodes", so.quad_nodes));
    so.oracle_m = static_cast<int>(opt_number(s, "$.solver", "oracle_m", so.oracle_m));
    so.descent_max_iter =
        static_cast<int>(opt_number(s, "$.solver", "descent_max_iter", so.descent_max_iter));
    so.descent_restarts =
        static_cast<int>(opt_number(s, "$.solver", "descent_restarts", so.descent_restarts));
    so.workers = static_cast<int>(opt_number(s, "$.solver", "workers", so.workers));
    so.max_realizations =
        static_cast<int>(opt_number(s, "$.solver", "max_realizations", so.max_realizations));
    so.seed = static_cast<std::uint64_t>(opt_number(s, "$.solver", "seed", 42.0));
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "$.output", {"report", "density_csv", "samples"});
    cfg.output.report = o.value("report", cfg.output.report);
    cfg.output.density_csv = o.value("density_csv", cfg.output.density_csv);
    cfg.output.samples = static_cast<int>(opt_number(o, "$.output", "samples", cfg.output.samples));
    if (cfg.output.samples < 2) bad("$.output.samples", "need at least 2 samples per interval");
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, "$.sweep", {"parameter", "values", "from", "to", "count"});
    SweepConfig sw;
    sw.parameter = s.value("parameter", std::string("alpha"));
    if (sw.parameter != "alpha") bad("$.sweep.parameter", "only 'alpha' sweeps are supported");
    if (s.contains("values")) {
      sw.values = need_array(s, "$.sweep", "values");
    } else {
      double from = need_number(s, "$.sweep", "from");
      double to = need_number(s, "$.sweep", "to");
      int count = static_cast<int>(need_number(s, "$.sweep", "count"));
      if (count < 2) bad("$.sweep.count", "need at least 2 points");
      for (int i = 0; i < count; ++i) sw.values.push_back(from + (to - from) * i / (count - 1));
    }
    if (sw.values.empty()) bad("$.sweep", "empty grid");
    cfg.sweep = std::move(sw);
  }

  if (j.contains("walls")) {
    const json& w = j["walls"];
    check_keys(w, "$.walls", {"R", "leading_species"});
    WallsInput wi;
    wi.r = need_array(w, "$.walls", "R");
    if (!std::is_sorted(wi.r.begin(), wi.r.end())) bad("$.walls.R", "walls must be sorted");
    int lead = static_cast<int>(opt_number(w, "$.walls", "leading_species", 1));
    if (lead != 1 && lead != 2) bad("$.walls.leading_species", "must be 1 or 2");
    wi.leading = lead == 1 ? Species::One : Species::Two;
    cfg.walls = std::move(wi);
  }

  cfg.config_hash = hash_hex(j.dump());
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_config_text(ss.str(), dir);
}

Problem problem_from_config(const RunConfig& cfg) {
  auto red = to_reduced(cfg.raw);
  Problem p = Problem::from_reduced(red);
  p.window_override = cfg.window;
  return p;
}

}  // namespace tfps
