#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfps/config.hpp"
#include "tfps/errors.hpp"
#include "tfps/report.hpp"

namespace fs = std::filesystem;
using namespace tfps;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitOracleFlag = 4;

struct CliArgs {
  std::string config_path;
  std::string out_dir = ".";
  int samples = -1;
  long long seed = -1;
};

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string out_path(const CliArgs& args, const std::string& name) {
  return (fs::path(args.out_dir) / name).string();
}

RunConfig load(const CliArgs& args) {
  auto cfg = parse_config(args.config_path);
  if (args.samples > 1) cfg.output.samples = args.samples;
  if (args.seed >= 0) cfg.solver.seed = static_cast<std::uint64_t>(args.seed);
  fs::create_directories(args.out_dir);
  return cfg;
}

int cmd_solve(const CliArgs& args) {
  auto cfg = load(args);
  auto problem = problem_from_config(cfg);
  auto report = solve_ground_state(problem, cfg.solver);

  write_json_file(out_path(args, cfg.output.report), report_to_json(report, cfg));
  if (!report.ground_state.empty()) {
    const auto& winner = report.candidates[report.ground_state.front()];
    write_density_csv(out_path(args, cfg.output.density_csv), winner.profile, cfg.raw,
                      cfg.output.samples);
  }

  std::printf("regime: %s\n", report.regime == Regime::MixedFavored      ? "mixed_favored"
                              : report.regime == Regime::SeparatedFavored ? "separated_favored"
                                                                          : "degenerate");
  if (report.empty_ground_state) {
    std::printf("ground state: empty (no feasible candidate)\n");
  } else if (!report.ground_state.empty()) {
    std::printf("ground state: energy %.17g, degeneracy %zu, candidates %zu\n",
                report.ground_energy, report.ground_state.size(), report.candidates.size());
  }
  for (const auto& w : report.warnings) std::printf("warning: %s\n", w.c_str());

  if (report.oracle && !report.oracle->agrees) return kExitOracleFlag;
  return kExitOk;
}

int cmd_enumerate(const CliArgs& args) {
  auto cfg = load(args);
  auto problem = problem_from_config(cfg);
  Interval window = resolve_window(problem, cfg.solver);
  auto topos = enumerate_topologies(problem.v1, problem.v2, cfg.solver.max_walls, window,
                                    cfg.solver);
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["window"] = {window.lo, window.hi};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : topos) {
    arr.push_back({{"n_walls", t.n_walls},
                   {"leading_species", species_index(t.leading)},
                   {"maximal_bound", t.maximal_bound}});
    std::printf("n=%d leading=%d%s\n", t.n_walls, species_index(t.leading),
                t.maximal_bound ? " [maximal bound]" : "");
  }
  j["topologies"] = arr;
  write_json_file(out_path(args, "topologies.json"), j);
  return kExitOk;
}

int cmd_stability(const CliArgs& args) {
  auto cfg = load(args);
  if (!cfg.walls) throw ValidationError("stability: config needs a 'walls' block with R");
  auto problem = problem_from_config(cfg);
  Interval window = resolve_window(problem, cfg.solver);

  WallConfig wc;
  if (problem.ensemble == EnsembleKind::FixedMu) {
    auto build = build_separated_profile(cfg.walls->r, cfg.walls->leading, problem.mu1,
                                         problem.mu2, problem.v1, problem.v2, window, cfg.solver);
    if (!build.feasible) throw ValidationError("stability: infeasible walls: " + build.reason);
    wc.r = cfg.walls->r;
    wc.leading = cfg.walls->leading;
    wc.mu1 = problem.mu1;
    wc.mu2 = problem.mu2;
    wc.profile = std::move(build.profile);
  } else {
    // chemical potentials from normalization over the given wall layout
    Topology topo{static_cast<int>(cfg.walls->r.size()), cfg.walls->leading, false};
    std::vector<Interval> s1, s2;
    std::vector<double> bounds{window.lo};
    for (double r : cfg.walls->r) bounds.push_back(r);
    bounds.push_back(window.hi);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      Species k = (i % 2 == 0) ? topo.leading : other(topo.leading);
      (k == Species::One ? s1 : s2).push_back({bounds[i], bounds[i + 1]});
    }
    double mu1 = normalize_species(problem.v1, s1, problem.n1, cfg.solver);
    double mu2 = normalize_species(problem.v2, s2, problem.n2, cfg.solver);
    auto build = build_separated_profile(cfg.walls->r, cfg.walls->leading, mu1, mu2, problem.v1,
                                         problem.v2, window, cfg.solver);
    if (!build.feasible) throw ValidationError("stability: infeasible walls: " + build.reason);
    wc.r = cfg.walls->r;
    wc.leading = cfg.walls->leading;
    wc.mu1 = mu1;
    wc.mu2 = mu2;
    wc.profile = std::move(build.profile);
  }
  wc.residuals = stationarity_residual(wc);

  auto rep = assemble_hessian(wc, problem.ensemble, problem.beta, cfg.solver);
  auto j = hessian_to_json(rep);
  j["walls"] = wc.r;
  j["mu1"] = wc.mu1;
  j["mu2"] = wc.mu2;
  j["residuals"] = wc.residuals;
  write_json_file(out_path(args, "hessian.json"), j);
  std::printf("positive_definite: %s\n", rep.positive_definite ? "true" : "false");
  std::printf("thermo_limit: %s\n", j["thermo_limit"].get<std::string>().c_str());
  return kExitOk;
}

int cmd_sweep(const CliArgs& args) {
  auto cfg = load(args);
  if (!cfg.sweep) throw ValidationError("sweep: config needs a 'sweep' block");
  auto problem = problem_from_config(cfg);
  auto sweep = sweep_alpha(problem, cfg.sweep->values, cfg.solver);
  write_sweep_csv(out_path(args, "sweep.csv"), sweep);
  write_json_file(out_path(args, "sweep.json"), sweep_to_json(sweep, cfg));
  for (double c : sweep.crossings) std::printf("crossing near alpha = %.17g\n", c);
  return kExitOk;
}

int cmd_oracle(const CliArgs& args) {
  auto cfg = load(args);
  auto problem = problem_from_config(cfg);
  Interval window = resolve_window(problem, cfg.solver);
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["config_hash"] = cfg.config_hash;
  if (problem.ensemble == EnsembleKind::FixedMu) {
    auto grid = oracle::Grid::make(window, cfg.solver.oracle_m, problem.v1, problem.v2);
    auto dens = oracle::pointwise_minimize_fixed_mu(grid, problem.mu1, problem.mu2, problem.alpha,
                                                    cfg.solver.workers);
    write_oracle_csv(out_path(args, "oracle.csv"), grid, dens);
    j["kind"] = "pointwise";
    j["energy"] = dens.energy;
    j["ties"] = dens.ties;
    std::printf("pointwise oracle energy: %.17g\n", dens.energy);
  } else {
    int m = std::min(cfg.solver.oracle_m, 2001);
    auto grid = oracle::Grid::make(window, m, problem.v1, problem.v2);
    auto res = oracle::projected_descent_fixed_n(grid, problem.n1, problem.n2, problem.alpha,
                                                 cfg.solver);
    write_oracle_csv(out_path(args, "oracle.csv"), grid, res.best);
    j["kind"] = "projected_descent";
    j["energy"] = res.best.energy;
    j["converged"] = res.converged;
    j["mu1_implied"] = res.mu1_implied;
    j["mu2_implied"] = res.mu2_implied;
    j["mu1_spread"] = res.mu1_spread;
    j["mu2_spread"] = res.mu2_spread;
    std::printf("projected descent energy: %.17g (converged: %s)\n", res.best.energy,
                res.converged ? "true" : "false");
    if (!res.converged) {
      write_json_file(out_path(args, "oracle.json"), j);
      return kExitNoConvergence;
    }
  }
  write_json_file(out_path(args, "oracle.json"), j);
  return kExitOk;
}

int cmd_plot_data(const CliArgs& args) {
  auto cfg = load(args);
  auto problem = problem_from_config(cfg);
  auto report = solve_ground_state(problem, cfg.solver);
  int emitted = 0;
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    const auto& c = report.candidates[i];
    if (c.profile.pieces.empty()) continue;
    char name[64];
    std::snprintf(name, sizeof(name), "plot_candidate_%02zu.csv", i);
    write_plot_data(out_path(args, name), c.profile, report.window, cfg.output.samples * 4);
    ++emitted;
  }
  nlohmann::json j = report_to_json(report, cfg);
  write_json_file(out_path(args, "plot_index.json"), j);
  std::printf("emitted %d candidate plot files\n", emitted);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-temperature ground states of binary condensate mixtures (TF approximation)"};
  app.require_subcommand(1);

  CliArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "configuration file (JSON)")->required();
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--samples", args.samples, "density CSV samples per interval");
    sub->add_option("--seed", args.seed, "oracle restart seed");
  };

  auto* solve = app.add_subcommand("solve", "full ground-state report");
  auto* enumerate = app.add_subcommand("enumerate", "candidate wall topologies");
  auto* stability = app.add_subcommand("stability", "Hessian report for given walls");
  auto* sweep = app.add_subcommand("sweep", "alpha sweep table");
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force oracle only");
  auto* plot = app.add_subcommand("plot-data", "columnar density/potential files");
  for (auto* sub : {solve, enumerate, stability, sweep, oracle_cmd, plot}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(args);
    if (enumerate->parsed()) return cmd_enumerate(args);
    if (stability->parsed()) return cmd_stability(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (oracle_cmd->parsed()) return cmd_oracle(args);
    if (plot->parsed()) return cmd_plot_data(args);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNoConvergence;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNoConvergence;
  }
  return kExitOk;
}
