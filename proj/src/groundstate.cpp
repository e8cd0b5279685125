#include "tfps/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "tfps/errors.hpp"
#include "tfps/linalg.hpp"
#include "tfps/parallel.hpp"
#include "tfps/quadrature.hpp"
#include "tfps/squarewell.hpp"

namespace tfps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// both species see the same infinite square well
const Potential::SquareWell* common_square_well(const Problem& p) {
  const auto* a = p.v1.as_square_well();
  const auto* b = p.v2.as_square_well();
  if (a && b && a->a == b->a && a->b == b->b) return a;
  return nullptr;
}

double mu_bound(const Problem& p, const SolverOptions& opt, Interval window) {
  if (p.ensemble == EnsembleKind::FixedMu) return std::max(p.mu1, p.mu2);
  double bound = -kInf;
  if (p.n1 > 0) bound = std::max(bound, normalize_species(p.v1, {window}, p.n1, opt));
  if (p.n2 > 0) bound = std::max(bound, normalize_species(p.v2, {window}, p.n2, opt));
  return bound;
}

}  // namespace

Regime classify_regime(double alpha) {
  // alpha = 0 is the decoupled limit: mixing always wins
  if (!(alpha >= 0)) throw ValidationError("classify_regime: alpha must be nonnegative");
  if (alpha < 1.0) return Regime::MixedFavored;
  if (alpha > 1.0) return Regime::SeparatedFavored;
  return Regime::Degenerate;
}

Problem Problem::from_reduced(const ReducedParams& red) {
  Problem p;
  p.alpha = red.alpha;
  p.beta = red.beta;
  p.ensemble = red.ensemble;
  p.n1 = red.n1;
  p.n2 = red.n2;
  p.mu1 = red.mu1;
  p.mu2 = red.mu2;
  p.v1 = red.v1;
  p.v2 = red.v2;
  p.provenance = red.provenance;
  return p;
}

Interval resolve_window(const Problem& p, const SolverOptions& opt) {
  if (p.window_override) return *p.window_override;

  auto h1 = p.v1.domain_hint();
  auto h2 = p.v2.domain_hint();
  Interval w{std::min(h1.lo, h2.lo), std::max(h1.hi, h2.hi)};

  auto hard1 = p.v1.hard_window();
  auto hard2 = p.v2.hard_window();
  if (hard1 && hard2) {
    return Interval{std::min(hard1->lo, hard2->lo), std::max(hard1->hi, hard2->hi)};
  }
  for (int outer = 0; outer < 6; ++outer) {
    double bound;
    try {
      bound = mu_bound(p, opt, w);
    } catch (const Error&) {
      bound = 1.0;
    }
    if (!std::isfinite(bound)) return w;
    double target = bound + 0.5 + 0.1 * std::abs(bound);
    bool grown = false;
    for (int it = 0; it < 60; ++it) {
      // a window edge is clear when every non-hard-bounded potential exceeds
      // the chemical-potential scale there
      auto clear = [&](double edge) {
        bool ok = true;
        if (!p.v1.hard_window() && p.v1.evaluate(edge) < target) ok = false;
        if (!p.v2.hard_window() && p.v2.evaluate(edge) < target) ok = false;
        return ok;
      };
      double half = 0.5 * w.length();
      bool changed = false;
      if (!clear(w.lo)) {
        w.lo -= 0.5 * half;
        changed = true;
      }
      if (!clear(w.hi)) {
        w.hi += 0.5 * half;
        changed = true;
      }
      if (!changed) break;
      grown = true;
    }
    if (!grown) break;
  }
  return w;
}

namespace {

Candidate candidate_from_config(WallConfig cfg, const Problem& p, const SolverOptions& opt) {
  Candidate c;
  c.kind = Candidate::Kind::Separated;
  c.profile = cfg.profile;
  c.profile.alpha = p.alpha;  // no mixed pieces; recorded for comparisons
  c.n1 = cfg.n1;
  c.n2 = cfg.n2;
  c.mu1 = cfg.mu1;
  c.mu2 = cfg.mu2;
  c.internal_energy = internal_energy(c.profile, opt.quad_nodes);
  double mu1 = p.ensemble == EnsembleKind::FixedMu ? p.mu1 : cfg.mu1;
  double mu2 = p.ensemble == EnsembleKind::FixedMu ? p.mu2 : cfg.mu2;
  c.grand_energy = c.internal_energy - mu1 * c.n1 - mu2 * c.n2;
  c.energy = p.ensemble == EnsembleKind::FixedN ? c.internal_energy : c.grand_energy;

  try {
    c.stability = assemble_hessian(cfg, p.ensemble, p.beta, opt);
    c.stable = c.stability->positive_definite;
    if (c.stability->thermo_overall == ThermoVerdict::Marginal)
      c.flags.push_back("marginal wall (phi' = 0): finite-size Hessian used");
    if (c.stability->used_one_sided_derivative)
      c.flags.push_back("wall at potential breakpoint: one-sided derivatives");
  } catch (const Error& e) {
    c.stable = false;
    c.flags.push_back(std::string("stability: ") + e.what());
  }

  if (p.beta && cfg.n_walls() > 0) {
    c.exclusions = p.ensemble == EnsembleKind::FixedN
                       ? nonmax_exclusion_fixed_n(cfg, *p.beta, opt)
                       : nonmax_exclusion_fixed_mu(cfg, *p.beta, opt);
    for (const auto& f : c.exclusions)
      if (f.triggered) c.excluded = true;
  }
  if (cfg.degenerate_continuum) c.flags.push_back("degenerate continuum");
  if (cfg.topology_transition) c.flags.push_back("topology transition during solve");
  if (cfg.wall_at_breakpoint) c.flags.push_back("wall at potential breakpoint");
  if (cfg.touches_window_edge) c.flags.push_back("support touches the search window edge");
  c.walls = std::move(cfg);
  return c;
}

void gather_separated(const Problem& p, Interval window, const SolverOptions& opt,
                      SolveReport& report) {
  auto topos = enumerate_topologies(p.v1, p.v2, opt.max_walls, window, opt);
  std::vector<std::vector<Candidate>> buckets(topos.size());
  std::vector<std::vector<std::string>> notes(topos.size());
  std::vector<int> continuum(topos.size(), 0);

  int workers = resolve_workers(opt.workers);
  parallel_for(static_cast<int>(topos.size()), workers, [&](int t) {
    const auto& topo = topos[t];
    if (p.ensemble == EnsembleKind::FixedMu) {
      auto res = solve_fixed_mu(topo, p.mu1, p.mu2, p.v1, p.v2, window, opt);
      if (res.degenerate_continuum) continuum[t] = 1;
      for (const auto& s : res.skipped)
        notes[t].push_back("n=" + std::to_string(topo.n_walls) + ": " + s);
      for (auto& cfg : res.configs)
        buckets[t].push_back(candidate_from_config(std::move(cfg), p, opt));
    } else {
      auto res = solve_fixed_n(topo, p.n1, p.n2, p.v1, p.v2, window, opt);
      for (const auto& s : res.diagnostics)
        notes[t].push_back("n=" + std::to_string(topo.n_walls) + ": " + s);
      for (auto& cfg : res.configs)
        buckets[t].push_back(candidate_from_config(std::move(cfg), p, opt));
    }
  });

  for (std::size_t t = 0; t < topos.size(); ++t) {
    if (continuum[t]) report.degenerate_continuum = true;
    for (auto& n : notes[t]) report.skipped.push_back(std::move(n));
    for (auto& c : buckets[t]) {
      // solve_fixed_n can return reduced topologies; drop duplicates
      bool dup = false;
      for (const auto& existing : report.candidates) {
        if (existing.kind != Candidate::Kind::Separated || !existing.walls || !c.walls) continue;
        if (existing.walls->n_walls() != c.walls->n_walls() ||
            existing.walls->leading != c.walls->leading)
          continue;
        double d = 0;
        for (int j = 0; j < c.walls->n_walls(); ++j)
          d = std::max(d, std::abs(existing.walls->r[j] - c.walls->r[j]));
        if (d <= 1e-6 * std::max(1.0, window.length())) dup = true;
      }
      if (!dup) report.candidates.push_back(std::move(c));
    }
  }
  if (report.degenerate_continuum)
    report.warnings.push_back(
        "degenerate continuum: wall positions are not unique (flat phi at the wall level); "
        "selection principle favors the fewest walls");
}

}  // namespace

DensityProfile solve_mixed_fixed_n(double n1, double n2, double alpha, const Potential& v1,
                                   const Potential& v2, Interval window,
                                   const SolverOptions& opt) {
  if (!(alpha < 1.0))
    throw PreconditionError("solve_mixed_fixed_n: mixed construction requires alpha < 1");
  if (!(n1 > 0) || !(n2 > 0))
    throw PreconditionError("solve_mixed_fixed_n: particle numbers must be positive");

  // decoupled initial guess
  double mu1 = normalize_species(v1, {window}, n1, opt);
  double mu2 = normalize_species(v2, {window}, n2, opt);

  double grow1 = 0.5, grow2 = 0.5;
  for (int it = 0; it < 120; ++it) {
    auto profile = build_mixed_profile_fixed_mu(mu1, mu2, alpha, v1, v2, window, opt.scan());
    auto st = mixed_profile_stats(profile, opt.quad_nodes);
    double e1 = st.n1 - n1;
    double e2 = st.n2 - n2;
    double err = std::max(std::abs(e1) / std::max(1.0, n1), std::abs(e2) / std::max(1.0, n2));
    if (err <= 1e-13) return profile;
    // a species squeezed out at the current chemical potentials makes the
    // Jacobian singular; raise its mu until it reappears (N is monotone in mu)
    if (st.m12 + st.m11 <= 0) {
      mu1 += grow1;
      grow1 *= 2;
      continue;
    }
    if (st.m12 + st.m22 <= 0) {
      mu2 += grow2;
      grow2 *= 2;
      continue;
    }
    grow1 = grow2 = 0.5;
    // dN/dmu from the region measures
    double den = 1.0 - alpha * alpha;
    Matrix jac = {{st.m12 / den + st.m11, -alpha * st.m12 / den},
                  {-alpha * st.m12 / den, st.m12 / den + st.m22}};
    std::vector<double> step;
    try {
      step = solve_linear(jac, {-e1, -e2});
    } catch (const Error&) {
      throw ConvergenceError("solve_mixed_fixed_n: singular normalization Jacobian");
    }
    double lambda = 1.0;
    for (int bt = 0; bt < 20; ++bt) {
      double m1 = mu1 + lambda * step[0];
      double m2 = mu2 + lambda * step[1];
      auto trial = build_mixed_profile_fixed_mu(m1, m2, alpha, v1, v2, window, opt.scan());
      auto ts = mixed_profile_stats(trial, opt.quad_nodes);
      double terr = std::max(std::abs(ts.n1 - n1) / std::max(1.0, n1),
                             std::abs(ts.n2 - n2) / std::max(1.0, n2));
      if (terr < err || terr <= 1e-13) {
        mu1 = m1;
        mu2 = m2;
        break;
      }
      lambda *= 0.5;
      if (bt == 19) throw ConvergenceError("solve_mixed_fixed_n: line search failed");
    }
  }
  auto profile = build_mixed_profile_fixed_mu(mu1, mu2, alpha, v1, v2, window, opt.scan());
  auto st = mixed_profile_stats(profile, opt.quad_nodes);
  double err = std::max(std::abs(st.n1 - n1) / std::max(1.0, n1),
                        std::abs(st.n2 - n2) / std::max(1.0, n2));
  if (err > opt.tol.norm)
    throw ConvergenceError("solve_mixed_fixed_n: no convergence, residual " + std::to_string(err));
  return profile;
}

namespace {

void add_mixed_candidate(const Problem& p, Interval window, const SolverOptions& opt,
                         SolveReport& report) {
  if (p.alpha >= 1.0) return;
  try {
    DensityProfile profile;
    if (p.ensemble == EnsembleKind::FixedMu) {
      profile = build_mixed_profile_fixed_mu(p.mu1, p.mu2, p.alpha, p.v1, p.v2, window, opt.scan());
    } else {
      if (!(p.n1 > 0) || !(p.n2 > 0)) return;  // single-species case is the n=0 skeleton
      profile = solve_mixed_fixed_n(p.n1, p.n2, p.alpha, p.v1, p.v2, window, opt);
    }
    if (profile.pieces.empty()) {
      report.skipped.push_back("mixed profile: empty support at these chemical potentials");
      return;
    }
    Candidate c;
    c.kind = Candidate::Kind::Mixed;
    c.profile = std::move(profile);
    auto nn = particle_numbers(c.profile, opt.quad_nodes);
    c.n1 = nn.first;
    c.n2 = nn.second;
    c.mu1 = c.profile.mu1;
    c.mu2 = c.profile.mu2;
    c.internal_energy = internal_energy(c.profile, opt.quad_nodes);
    c.grand_energy = c.internal_energy - c.mu1 * c.n1 - c.mu2 * c.n2;
    c.energy = p.ensemble == EnsembleKind::FixedN ? c.internal_energy : c.grand_energy;
    bool has_mixed_piece = false;
    for (const auto& piece : c.profile.pieces)
      if (piece.kind == ProfilePiece::Kind::Mixed) has_mixed_piece = true;
    if (!has_mixed_piece) c.flags.push_back("mixed candidate degenerated to single-species skirts");
    report.candidates.push_back(std::move(c));
  } catch (const Error& e) {
    report.warnings.push_back(std::string("mixed candidate: ") + e.what());
  }
}

void rank_candidates(SolveReport& report, bool degenerate_mode = false) {
  // deterministic candidate order: mixed first, then by (n, leading, R)
  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.kind != b.kind) return a.kind == Candidate::Kind::Mixed;
              if (!a.walls || !b.walls) return false;
              if (a.walls->n_walls() != b.walls->n_walls())
                return a.walls->n_walls() < b.walls->n_walls();
              if (a.walls->leading != b.walls->leading)
                return a.walls->leading == Species::One;
              return a.walls->r < b.walls->r;
            });

  std::vector<int> eligible;
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    auto& c = report.candidates[i];
    if (!std::isfinite(c.energy)) {
      c.stable = false;
      c.flags.push_back("non-finite energy: excluded from ranking");
      report.warnings.push_back("candidate with non-finite energy encountered");
      continue;
    }
    bool regime_ok = true;
    if (report.regime == Regime::SeparatedFavored && c.kind == Candidate::Kind::Mixed)
      regime_ok = false;  // a mixed state can always be beaten locally when alpha > 1
    if (report.regime == Regime::MixedFavored && c.kind != Candidate::Kind::Mixed) {
      // separated candidates are reported but cannot win below threshold
      regime_ok = false;
    }
    if (regime_ok && c.stable && !c.excluded) eligible.push_back(static_cast<int>(i));
  }
  if (report.regime == Regime::MixedFavored && eligible.empty()) {
    // no mixed candidate was constructible (e.g. a species is empty);
    // fall back to the separated list
    for (std::size_t i = 0; i < report.candidates.size(); ++i)
      if (report.candidates[i].stable && !report.candidates[i].excluded)
        eligible.push_back(static_cast<int>(i));
  }
  if (eligible.empty()) {
    report.empty_ground_state = true;
    report.ground_energy = 0;
    return;
  }
  double best = kInf;
  for (int i : eligible) best = std::min(best, report.candidates[i].energy);
  double tol = 1e-9 * std::max(1.0, std::abs(best));

  // degenerate group at the minimum; selection principle: fewest walls
  std::vector<int> group;
  for (int i : eligible)
    if (report.candidates[i].energy <= best + tol) group.push_back(i);
  if (degenerate_mode) {
    // threshold value: all co-minimizers are listed, none is selected over
    // the others
    report.ground_state = group;
  } else {
    int min_walls = std::numeric_limits<int>::max();
    for (int i : group) {
      int n = report.candidates[i].walls ? report.candidates[i].walls->n_walls() : 0;
      min_walls = std::min(min_walls, n);
    }
    for (int i : group) {
      int n = report.candidates[i].walls ? report.candidates[i].walls->n_walls() : 0;
      if (n == min_walls) report.ground_state.push_back(i);
    }
  }
  report.ground_energy = best;

  // sanity: the reported ground state can beat no eligible candidate
  for (int i : eligible) {
    if (report.candidates[i].energy < best - tol)
      report.warnings.push_back("ranking inconsistency detected");
  }
}

void run_oracle_check(const Problem& p, Interval window, const SolverOptions& opt,
                      SolveReport& report) {
  if (report.ground_state.empty() && !report.empty_ground_state) return;
  try {
    OracleComparison cmp;
    if (p.ensemble == EnsembleKind::FixedMu) {
      auto grid = oracle::Grid::make(window, opt.oracle_m, p.v1, p.v2);
      auto dens = oracle::pointwise_minimize_fixed_mu(grid, p.mu1, p.mu2, p.alpha, opt.workers);
      cmp.kind = "pointwise";
      cmp.grid_m = grid.m;
      cmp.oracle_energy = dens.energy;
      if (report.empty_ground_state) {
        cmp.energy_diff = -dens.energy;
        cmp.sup_norm = 0;
        for (int i = 0; i < grid.m; ++i)
          cmp.sup_norm = std::max({cmp.sup_norm, dens.rho1[i], dens.rho2[i]});
      } else {
        const auto& winner = report.candidates[report.ground_state.front()];
        double mu1 = p.mu1, mu2 = p.mu2;
        auto d = oracle::compare(winner.profile, grid, dens, true, mu1, mu2);
        cmp.energy_diff = d.energy_diff;
        cmp.sup_norm = d.sup_norm;
        cmp.l2 = d.l2;
        cmp.support_symmdiff = d.support_symmdiff;
      }
      double scale = std::max(1.0, std::abs(cmp.oracle_energy));
      cmp.agrees = std::abs(cmp.energy_diff) <= opt.tol.oracle * scale;
    } else {
      if (!(p.n1 > 0) || !(p.n2 > 0)) return;  // descent needs both species
      int m = std::min(opt.oracle_m, 2001);
      auto grid = oracle::Grid::make(window, m, p.v1, p.v2);
      auto res = oracle::projected_descent_fixed_n(grid, p.n1, p.n2, p.alpha, opt);
      cmp.kind = "projected_descent";
      cmp.grid_m = grid.m;
      cmp.oracle_energy = res.best.energy;
      if (!report.empty_ground_state) {
        const auto& winner = report.candidates[report.ground_state.front()];
        // extra probe: descend from the winner itself; if the grid can improve
        // on it beyond tolerance, the analytic solution is not a minimum
        std::vector<double> s1(grid.m), s2(grid.m);
        for (int i = 0; i < grid.m; ++i) {
          s1[i] = winner.profile.rho1(grid.x[i]);
          s2[i] = winner.profile.rho2(grid.x[i]);
        }
        try {
          auto seeded = oracle::projected_descent_seeded(grid, std::move(s1), std::move(s2), p.n1,
                                                         p.n2, p.alpha, opt);
          cmp.oracle_energy = std::min(cmp.oracle_energy, seeded.best.energy);
        } catch (const Error&) {
        }
        auto d = oracle::compare(winner.profile, grid, res.best, false);
        cmp.sup_norm = d.sup_norm;
        cmp.l2 = d.l2;
        cmp.support_symmdiff = d.support_symmdiff;
        // the descent is a local method: landing in a worse basin is not an
        // alarm, beating the winner is
        cmp.energy_diff = winner.internal_energy - cmp.oracle_energy;
        double scale = std::max(1.0, std::abs(cmp.oracle_energy));
        cmp.agrees = cmp.energy_diff <= opt.tol.oracle * scale;
      } else {
        cmp.agrees = true;
      }
    }
    if (!cmp.agrees)
      report.warnings.push_back("oracle disagreement: energy difference " +
                                std::to_string(cmp.energy_diff));
    report.oracle = cmp;
  } catch (const Error& e) {
    report.warnings.push_back(std::string("oracle check failed: ") + e.what());
  }
}

}  // namespace

SolveReport solve_ground_state(const Problem& p, const SolverOptions& opt) {
  SolveReport report;
  report.alpha = p.alpha;
  report.beta = p.beta;
  report.ensemble = p.ensemble;
  report.regime = classify_regime(p.alpha);
  Interval window = resolve_window(p, opt);
  report.window = window;

  gather_separated(p, window, opt, report);
  add_mixed_candidate(p, window, opt, report);

  if (report.regime == Regime::Degenerate) {
    // threshold: no winner is fabricated
    report.warnings.push_back(
        "alpha = 1: mixed and separated configurations are degenerate at first order; "
        "no ground state is selected");
    if (const auto* sw = common_square_well(p); sw && p.ensemble == EnsembleKind::FixedN) {
      // closed-form co-minimizers: the flat mixed state and the single-wall
      // separated realizations have exactly equal energy
      squarewell::WellProblem w{sw->b - sw->a, 1.0, p.n1, p.n2, 0, 0};
      Candidate c;
      c.kind = Candidate::Kind::Mixed;
      c.energy = c.internal_energy = squarewell::mixed_internal_energy(w);
      c.n1 = p.n1;
      c.n2 = p.n2;
      c.flags.push_back("flat mixed co-minimizer (closed form; profile undefined at alpha=1)");
      report.candidates.push_back(std::move(c));
    }
    rank_candidates(report, /*degenerate_mode=*/true);
    return report;
  }

  rank_candidates(report);
  if (opt.oracle_check) run_oracle_check(p, window, opt, report);
  return report;
}

SweepResult sweep_alpha(const Problem& p, const std::vector<double>& alphas,
                        const SolverOptions& opt) {
  SweepResult out;
  const auto* sw = common_square_well(p);
  const double well_len = sw ? sw->b - sw->a : 0;

  // the separated side does not depend on alpha: solve once
  std::optional<double> e_sep;
  std::string sep_note;
  try {
    Problem ps = p;
    ps.alpha = 2.0;  // any value above threshold enumerates the separated family
    auto rep = solve_ground_state(ps, opt);
    if (!rep.empty_ground_state && !rep.ground_state.empty())
      e_sep = rep.ground_energy;
    else
      sep_note = "no separated candidate";
  } catch (const Error& e) {
    sep_note = e.what();
  }

  for (double alpha : alphas) {
    SweepRow row;
    row.alpha = alpha;
    row.e_separated = e_sep;
    if (!sep_note.empty()) row.note = sep_note;
    try {
      if (!(alpha >= 0)) throw ValidationError("alpha must be nonnegative");
      if (alpha == 1.0) {
        if (sw && p.ensemble == EnsembleKind::FixedN) {
          squarewell::WellProblem w{well_len, alpha, p.n1, p.n2, p.mu1, p.mu2};
          row.e_mixed = squarewell::mixed_internal_energy(w);
        } else if (sw && p.mu1 == p.mu2) {
          // the equal-mu curve is regular through the threshold
          squarewell::WellProblem w{well_len, alpha, 0, 0, p.mu1, p.mu2};
          row.e_mixed = squarewell::mixed_grand_energy(w);
        }
        row.verdict = "degenerate";
        out.rows.push_back(row);
        continue;
      }
      if (p.ensemble == EnsembleKind::FixedMu) {
        if (sw) {
          squarewell::WellProblem w{well_len, alpha, 0, 0, p.mu1, p.mu2};
          auto [lo, hi] = squarewell::alpha_bounds(p.mu1, p.mu2);
          row.forbidden = alpha > lo && alpha < hi;
          if (!row.forbidden) row.e_mixed = squarewell::mixed_grand_energy(w);
        } else if (alpha < 1.0) {
          auto prof = build_mixed_profile_fixed_mu(p.mu1, p.mu2, alpha, p.v1, p.v2,
                                                   resolve_window(p, opt), opt.scan());
          if (!prof.pieces.empty())
            row.e_mixed = grand_canonical_energy(prof, p.mu1, p.mu2, opt.quad_nodes);
        } else {
          row.note = "mixed energy not evaluated for alpha > 1 on generic potentials";
        }
      } else {
        if (sw) {
          squarewell::WellProblem w{well_len, alpha, p.n1, p.n2, 0, 0};
          row.e_mixed = squarewell::mixed_internal_energy(w);
        } else if (alpha < 1.0 && p.n1 > 0 && p.n2 > 0) {
          auto prof =
              solve_mixed_fixed_n(p.n1, p.n2, alpha, p.v1, p.v2, resolve_window(p, opt), opt);
          row.e_mixed = internal_energy(prof, opt.quad_nodes);
        } else {
          row.note = "mixed energy not evaluated for alpha > 1 on generic potentials";
        }
      }
      if (row.e_mixed && row.e_separated) {
        double scale = std::max({1.0, std::abs(*row.e_mixed), std::abs(*row.e_separated)});
        if (std::abs(*row.e_mixed - *row.e_separated) <= opt.tol.energy * scale)
          row.verdict = "degenerate";
        else
          row.verdict = *row.e_mixed < *row.e_separated ? "mixed" : "separated";
      } else if (row.e_separated) {
        row.verdict = "separated";
      } else if (row.e_mixed) {
        row.verdict = "mixed";
      } else {
        row.verdict = "undetermined";
      }
    } catch (const Error& e) {
      row.verdict = "error";
      row.note = e.what();
    }
    out.rows.push_back(row);
  }

  for (std::size_t i = 0; i + 1 < out.rows.size(); ++i) {
    const auto& a = out.rows[i];
    const auto& b = out.rows[i + 1];
    bool a_mixed = a.verdict == "mixed";
    bool b_mixed = b.verdict == "mixed";
    bool a_sep = a.verdict == "separated";
    bool b_sep = b.verdict == "separated";
    if ((a_mixed && b_sep) || (a_sep && b_mixed) || a.verdict == "degenerate")
      out.crossings.push_back(a.verdict == "degenerate" ? a.alpha
                                                        : 0.5 * (a.alpha + b.alpha));
  }
  return out;
}

}  // namespace tfps
