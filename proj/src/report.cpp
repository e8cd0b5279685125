#include "tfps/report.hpp"

#include <cstdio>
#include <fstream>

#include "tfps/errors.hpp"

namespace tfps {

namespace {

using nlohmann::json;

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::MixedFavored: return "mixed_favored";
    case Regime::SeparatedFavored: return "separated_favored";
    case Regime::Degenerate: return "degenerate";
  }
  return "?";
}

const char* thermo_name(ThermoVerdict v) {
  switch (v) {
    case ThermoVerdict::Pass: return "pass";
    case ThermoVerdict::Fail: return "fail";
    case ThermoVerdict::Marginal: return "marginal";
  }
  return "?";
}

const char* endpoint_name(EndpointKind k) {
  switch (k) {
    case EndpointKind::Wall: return "wall";
    case EndpointKind::Zero: return "zero";
    case EndpointKind::SquareWellEdge: return "square_well_edge";
  }
  return "?";
}

json potential_to_json(const Potential& p) {
  json j;
  j["family"] = p.family_name();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        json& params = j["params"];
        if constexpr (std::is_same_v<T, Potential::SquareWell>) {
          params["a"] = f.a;
          params["b"] = f.b;
        } else if constexpr (std::is_same_v<T, Potential::Harmonic>) {
          params["k"] = f.k;
          params["x0"] = f.x0;
        } else if constexpr (std::is_same_v<T, Potential::Polynomial>) {
          params["coeffs"] = f.coeffs;
        } else if constexpr (std::is_same_v<T, Potential::DoubleWell>) {
          params["h"] = f.h;
          params["w"] = f.w;
        } else if constexpr (std::is_same_v<T, Potential::PiecewisePolynomial>) {
          params["breakpoints"] = f.breakpoints;
          params["segments"] = f.segments;
        } else {
          params["n_samples"] = f.x.size();
          params["range"] = {f.x.front(), f.x.back()};
        }
      },
      p.family());
  return j;
}

json support_to_json(const Support& s) {
  json arr = json::array();
  for (const auto& iv : s.intervals)
    arr.push_back({iv.lo, iv.hi, endpoint_name(iv.lo_kind), endpoint_name(iv.hi_kind)});
  return arr;
}

}  // namespace

json hessian_to_json(const HessianReport& rep) {
  json j;
  j["matrix"] = rep.h;
  j["a"] = rep.a;
  j["c"] = rep.c;
  j["positive_definite"] = rep.positive_definite;
  j["min_eigenvalue"] =
      std::isnan(rep.min_eigenvalue) ? json(nullptr) : json(rep.min_eigenvalue);
  j["thermo_limit"] = thermo_name(rep.thermo_overall);
  json per = json::array();
  for (auto v : rep.per_wall) per.push_back(thermo_name(v));
  j["thermo_per_wall"] = per;
  j["one_sided_derivative"] = rep.used_one_sided_derivative;
  json nec;
  nec["applicable"] = rep.necessary.applicable;
  nec["pass"] = rep.necessary.pass;
  nec["nonpositive_count"] = rep.necessary.nonpositive_count;
  nec["failed_condition"] = rep.necessary.failed_condition;
  j["necessary_conditions"] = nec;
  return j;
}

json report_to_json(const SolveReport& report, const RunConfig& cfg) {
  json j;
  j["schema"] = kReportSchema;

  json prov;
  prov["version"] = kVersion;
  prov["config_hash"] = cfg.config_hash;
  prov["seed"] = cfg.solver.seed;
  prov["tolerances"] = {{"root", cfg.solver.tol.root},
                        {"stat", cfg.solver.tol.stat},
                        {"norm", cfg.solver.tol.norm},
                        {"energy", cfg.solver.tol.energy},
                        {"oracle", cfg.solver.tol.oracle}};
  prov["scan_cells"] = cfg.solver.scan_cells;
  prov["quad_nodes"] = cfg.solver.quad_nodes;
  prov["oracle_m"] = cfg.solver.oracle_m;
  prov["workers"] = cfg.solver.workers;
  j["provenance"] = prov;

  const bool unit_couplings = cfg.raw.u11 == 1.0 && cfg.raw.u22 == 1.0;
  json prob;
  prob["ensemble"] = report.ensemble == EnsembleKind::FixedN ? "fixed_n" : "fixed_mu";
  prob["U11"] = cfg.raw.u11;
  prob["U22"] = cfg.raw.u22;
  prob["U12"] = cfg.raw.u12;
  prob["alpha"] = report.alpha;
  prob["beta"] = report.beta ? json(*report.beta) : json(nullptr);
  prob["proportional"] = cfg.raw.proportional_declared;
  if (report.ensemble == EnsembleKind::FixedN) {
    prob["N1"] = cfg.raw.n1;
    prob["N2"] = cfg.raw.n2;
  } else {
    prob["mu1"] = cfg.raw.mu1;
    prob["mu2"] = cfg.raw.mu2;
  }
  prob["V1"] = potential_to_json(cfg.raw.v1);
  prob["V2"] = potential_to_json(cfg.raw.v2);
  prob["window"] = {report.window.lo, report.window.hi};
  prob["units"] = "reduced";
  j["problem"] = prob;

  j["regime"] = regime_name(report.regime);
  j["degenerate_continuum"] = report.degenerate_continuum;

  json cands = json::array();
  for (const auto& c : report.candidates) {
    json cj;
    cj["kind"] = c.kind == Candidate::Kind::Mixed ? "mixed" : "separated";
    cj["energy"] = c.energy;
    cj["internal_energy"] = c.internal_energy;
    cj["grand_energy"] = c.grand_energy;
    cj["mu1"] = c.mu1;
    cj["mu2"] = c.mu2;
    cj["n1"] = c.n1;
    cj["n2"] = c.n2;
    if (!unit_couplings) {
      cj["raw"] = {{"mu1", raw_chemical_potential(Species::One, c.mu1, cfg.raw)},
                   {"mu2", raw_chemical_potential(Species::Two, c.mu2, cfg.raw)},
                   {"n1", raw_particle_number(Species::One, c.n1, cfg.raw)},
                   {"n2", raw_particle_number(Species::Two, c.n2, cfg.raw)}};
    }
    cj["stable"] = c.stable;
    cj["excluded"] = c.excluded;
    cj["flags"] = c.flags;
    if (c.walls) {
      cj["n_walls"] = c.walls->n_walls();
      cj["walls"] = c.walls->r;
      json labels = json::array();
      for (int w = 0; w < c.walls->n_walls(); ++w) labels.push_back(c.walls->label(w));
      cj["labels"] = labels;
      cj["leading_species"] = species_index(c.walls->leading);
      cj["is_maximal"] = c.walls->is_maximal;
      cj["residuals"] = c.walls->residuals;
    }
    cj["supports"] = {{"s1", support_to_json(c.profile.s1)}, {"s2", support_to_json(c.profile.s2)}};
    cj["stability"] = c.stability ? hessian_to_json(*c.stability) : json(nullptr);
    json excl = json::array();
    for (const auto& f : c.exclusions) {
      excl.push_back({{"rule", f.rule},
                      {"triggered", f.triggered},
                      {"lhs", f.lhs},
                      {"rhs", f.rhs},
                      {"extremum", f.extremum},
                      {"detail", f.detail}});
    }
    cj["exclusions"] = excl;
    cands.push_back(std::move(cj));
  }
  j["candidates"] = cands;

  json gs;
  gs["indices"] = report.ground_state;
  gs["degeneracy"] = report.ground_state.size();
  gs["energy"] = report.ground_energy;
  gs["empty"] = report.empty_ground_state;
  j["ground_state"] = gs;

  if (report.oracle) {
    const auto& o = *report.oracle;
    j["oracle"] = {{"kind", o.kind},
                   {"grid_m", o.grid_m},
                   {"oracle_energy", o.oracle_energy},
                   {"energy_diff", o.energy_diff},
                   {"sup_norm", o.sup_norm},
                   {"l2", o.l2},
                   {"support_symmdiff", o.support_symmdiff},
                   {"agrees", o.agrees}};
  } else {
    j["oracle"] = nullptr;
  }
  j["warnings"] = report.warnings;
  j["skipped"] = report.skipped;
  return j;
}

json sweep_to_json(const SweepResult& sweep, const RunConfig& cfg) {
  json j;
  j["schema"] = kReportSchema;
  j["config_hash"] = cfg.config_hash;
  json rows = json::array();
  for (const auto& r : sweep.rows) {
    rows.push_back({{"alpha", r.alpha},
                    {"e_mixed", r.e_mixed ? json(*r.e_mixed) : json(nullptr)},
                    {"e_separated", r.e_separated ? json(*r.e_separated) : json(nullptr)},
                    {"verdict", r.verdict},
                    {"forbidden", r.forbidden},
                    {"note", r.note}});
  }
  j["rows"] = rows;
  j["crossings"] = sweep.crossings;
  return j;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_density_csv(const std::string& path, const DensityProfile& profile,
                       const RawParams& raw, int samples_per_interval) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << "x,rho1,rho2,V1,V2\n";
  const double s1 = std::sqrt(raw.u11);
  const double s2 = std::sqrt(raw.u22);
  for (const auto& piece : profile.pieces) {
    for (int i = 0; i < samples_per_interval; ++i) {
      double x = piece.span.lo + piece.span.length() * i / (samples_per_interval - 1);
      // reduced densities scale by 1/sqrt(U), reduced potentials by sqrt(U)
      double r1 = profile.rho1(x) / s1;
      double r2 = profile.rho2(x) / s2;
      double v1 = profile.v1.evaluate(x) * s1;
      double v2 = profile.v2.evaluate(x) * s2;
      out << format_number(x) << ',' << format_number(r1) << ',' << format_number(r2) << ','
          << format_number(v1) << ',' << format_number(v2) << '\n';
    }
  }
}

void write_plot_data(const std::string& path, const DensityProfile& profile, Interval window,
                     int samples) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << "x,V,rho1,rho2\n";
  for (int i = 0; i < samples; ++i) {
    double x = window.lo + window.length() * i / (samples - 1);
    double v = profile.v1.evaluate(x);
    out << format_number(x) << ',' << format_number(std::isfinite(v) ? v : -1.0) << ','
        << format_number(profile.rho1(x)) << ',' << format_number(profile.rho2(x)) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << "alpha,e_mixed,e_separated,verdict,forbidden,note\n";
  for (const auto& r : sweep.rows) {
    out << format_number(r.alpha) << ',' << (r.e_mixed ? format_number(*r.e_mixed) : "") << ','
        << (r.e_separated ? format_number(*r.e_separated) : "") << ',' << r.verdict << ','
        << (r.forbidden ? 1 : 0) << ',' << r.note << '\n';
  }
}

void write_oracle_csv(const std::string& path, const oracle::Grid& grid,
                      const oracle::GridDensities& densities) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  out << "x,rho1,rho2,V1,V2\n";
  for (int i = 0; i < grid.m; ++i) {
    out << format_number(grid.x[i]) << ',' << format_number(densities.rho1[i]) << ','
        << format_number(densities.rho2[i]) << ','
        << format_number(std::isfinite(grid.v1[i]) ? grid.v1[i] : -1.0) << ','
        << format_number(std::isfinite(grid.v2[i]) ? grid.v2[i] : -1.0) << '\n';
  }
}

}  // namespace tfps
