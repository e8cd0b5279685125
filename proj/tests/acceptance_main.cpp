// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tfps/errors.hpp"
#include "tfps/groundstate.hpp"
#include "tfps/oracle.hpp"
#include "tfps/quadrature.hpp"
#include "tfps/report.hpp"
#include "tfps/squarewell.hpp"
#include "tfps/stability.hpp"

using namespace tfps;

namespace {

struct Criterion {
  std::string detail;
  bool ok = true;
  int checks = 0;

  void require(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void require_close(double got, double want, double rel, const std::string& what) {
    double scale = std::max({1.0, std::abs(got), std::abs(want)});
    require(std::abs(got - want) <= rel * scale,
            what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  }
};

int g_failures = 0;

template <typename F>
void run(const char* id, const char* name, F&& body) {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.ok) {
    std::printf("[PASS] %s %s (%d checks, %.2fs)\n", id, name, c.checks, secs);
  } else {
    std::printf("[FAIL] %s %s (%.2fs): %s\n", id, name, secs, c.detail.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

Problem square_well_problem(EnsembleKind kind, double a, double b, double alpha) {
  Problem p;
  p.alpha = alpha;
  p.beta = 1.0;
  p.ensemble = kind;
  p.v1 = Potential::square_well(0.0, 1.0);
  p.v2 = Potential::square_well(0.0, 1.0);
  if (kind == EnsembleKind::FixedN) {
    p.n1 = a;
    p.n2 = b;
  } else {
    p.mu1 = a;
    p.mu2 = b;
  }
  return p;
}

// double-well suite used by criteria 4-6: V1 = DoubleWell(1,1), V2 = beta V1
struct DwSuite {
  Potential v1, v2;
  double beta;
  Interval window{-2.5, 2.5};
  DwSuite(double b) : v1(Potential::double_well(1.0, 1.0)), v2(v1.scaled(b)), beta(b) {}

  // particle numbers that put a stationary configuration at mu1, wall level v,
  // for the given topology slots
  double manufacture_n(const Potential& v, double mu, const std::vector<Interval>& slots) const {
    double n = 0;
    SolverOptions opt;
    for (const auto& slot : slots) {
      auto sub = v.sublevel_set(mu, slot, opt.scan());
      for (const auto& part : sub.parts())
        n += integrate([&](double x) { return mu - v.evaluate(x); }, part);
    }
    return n;
  }
};

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  run("C1", "square-well threshold at fixed N", [](Criterion& c) {
    for (double alpha : {0.25, 0.5, 0.99, 1.01, 1.5, 3.0}) {
      auto rep = solve_ground_state(square_well_problem(EnsembleKind::FixedN, 1.0, 1.0, alpha));
      squarewell::WellProblem w{1.0, alpha, 1.0, 1.0, 0, 0};
      double um = squarewell::mixed_internal_energy(w);               // 1 + alpha
      double us = squarewell::separated_internal_optimum(w).energy;   // 2
      c.require_close(um, 1.0 + alpha, 1e-15, "U_m closed form");
      c.require_close(us, 2.0, 1e-15, "U_s closed form");
      c.require(!rep.ground_state.empty(), "ground state found");
      if (rep.ground_state.empty()) continue;
      double e = rep.ground_energy;
      if (alpha < 1.0) {
        c.require(rep.regime == Regime::MixedFavored, "verdict below threshold");
        c.require_close(e, um, 1e-12, "mixed energy at alpha=" + std::to_string(alpha));
      } else {
        c.require(rep.regime == Regime::SeparatedFavored, "verdict above threshold");
        c.require_close(e, us, 1e-12, "separated energy at alpha=" + std::to_string(alpha));
      }
    }
    // the verdict flips exactly at alpha = 1
    c.require(classify_regime(1.0) == Regime::Degenerate, "alpha=1 degenerate");
    c.require(classify_regime(std::nextafter(1.0, 0.0)) == Regime::MixedFavored,
              "flip below 1");
    c.require(classify_regime(std::nextafter(1.0, 2.0)) == Regime::SeparatedFavored,
              "flip above 1");
    auto w1 = squarewell::WellProblem{1.0, 1.0, 1.0, 1.0, 0, 0};
    c.require(squarewell::mixed_internal_energy(w1) ==
                  squarewell::separated_internal_optimum(w1).energy,
              "exact degeneracy at alpha=1");
  });

  run("C2", "square-well fixed mu, mu1=1, mu2=2", [](Criterion& c) {
    auto [lo, hi] = squarewell::alpha_bounds(1.0, 2.0);
    c.require(lo == 0.5 && hi == 2.0, "forbidden interval (0.5, 2)");
    squarewell::WellProblem w3{1.0, 3.0, 0, 0, 1.0, 2.0};
    c.require_close(squarewell::mixed_grand_energy(w3), -0.4375, 1e-12, "E_m(3)");
    c.require_close(squarewell::separated_grand_energy_min(w3), -2.0, 1e-12,
                    "single-condensate minimum");
    for (double alpha : {0.0, 0.4, 3.0, 10.0}) {
      auto rep = solve_ground_state(square_well_problem(EnsembleKind::FixedMu, 1.0, 2.0, alpha));
      c.require(!rep.ground_state.empty(), "ground state at alpha=" + std::to_string(alpha));
      if (rep.ground_state.empty()) continue;
      const auto& winner = rep.candidates[rep.ground_state.front()];
      squarewell::WellProblem w{1.0, alpha, 0, 0, 1.0, 2.0};
      if (alpha == 0.0 || alpha == 0.4) {
        c.require(winner.kind == Candidate::Kind::Mixed,
                  "mixed wins at alpha=" + std::to_string(alpha));
        c.require_close(rep.ground_energy, squarewell::mixed_grand_energy(w), 1e-12,
                        "mixed energy closed form");
        c.require(squarewell::mixed_grand_energy(w) < -2.0, "mixed beats the single condensate");
      } else {
        c.require(winner.kind == Candidate::Kind::Separated, "separated winner");
        c.require_close(rep.ground_energy, -2.0, 1e-12, "species-2 condensate energy");
        c.require(winner.n1 == 0.0 && winner.n2 > 0, "winner is the species-2 condensate");
      }
    }
  });

  run("C3", "square-well fixed mu, mu1=mu2=1: crossing at alpha=1", [](Criterion& c) {
    Problem p = square_well_problem(EnsembleKind::FixedMu, 1.0, 1.0, 1.0);
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(0.5 + i * 0.025);
    auto sweep = sweep_alpha(p, grid);
    for (const auto& row : sweep.rows) {
      if (row.alpha == 1.0) continue;
      c.require(row.e_mixed.has_value(), "E_m defined at alpha=" + std::to_string(row.alpha));
      if (!row.e_mixed) continue;
      c.require_close(*row.e_mixed, -1.0 / (1.0 + row.alpha), 1e-12, "E_m = -1/(1+alpha)");
      c.require(row.e_separated.has_value(), "E_s defined");
      if (row.e_separated) c.require_close(*row.e_separated, -0.5, 1e-12, "E_s = -1/2");
      c.require(row.verdict == (row.alpha < 1.0 ? "mixed" : "separated"), "verdict ordering");
    }
    bool found = false;
    for (double x : sweep.crossings)
      if (std::abs(x - 1.0) <= 0.025 + 1e-12) found = true;
    c.require(found, "crossing detected at alpha=1 within grid resolution");
  });

  run("C4", "double-well stationarity, gradient and Hessian checks", [](Criterion& c) {
    DwSuite dw(0.8);
    const double mu1 = 0.9, v = 0.25;
    const double mu2 = mu1 - (1 - dw.beta) * v;
    double x_in = std::sqrt(0.5), x_out = std::sqrt(1.5);
    double n1 = dw.manufacture_n(dw.v1, mu1, {{-x_out, -x_in}, {x_in, x_out}});
    double n2 = dw.manufacture_n(dw.v2, mu2,
                                 {{dw.window.lo, -x_out}, {-x_in, x_in}, {x_out, dw.window.hi}});
    SolverOptions opt;
    Topology topo{4, Species::Two, true};
    auto res = solve_fixed_n(topo, n1, n2, dw.v1, dw.v2, dw.window, opt);
    c.require(!res.configs.empty(), "maximal configuration converged");
    if (res.configs.empty()) return;
    const auto& cfg = res.configs.front();

    // |rho1(R_j) - rho2(R_j)| <= 1e-10
    for (int j = 0; j < cfg.n_walls(); ++j) {
      double r1 = cfg.mu1 - dw.v1(cfg.r[j]);
      double r2 = cfg.mu2 - dw.v2(cfg.r[j]);
      c.require(std::abs(r1 - r2) <= 1e-10 * std::max(1.0, r1), "wall density equality");
    }
    // V(R_j) all equal to 1e-8 relative
    double v0 = dw.v1(cfg.r[0]);
    for (int j = 1; j < cfg.n_walls(); ++j)
      c.require(std::abs(dw.v1(cfg.r[j]) - v0) <= 1e-8 * std::max(1.0, std::abs(v0)),
                "iso-potential walls");

    // first derivative vs central differences at a displaced configuration
    auto r_off = cfg.r;
    r_off[1] -= 0.02;
    r_off[2] += 0.015;
    const double h1 = 1e-4;
    for (int j = 0; j < 4; ++j) {
      auto rp = r_off, rm = r_off;
      rp[j] += h1;
      rm[j] -= h1;
      double fd = (internal_energy_at_walls(topo, rp, n1, n2, dw.v1, dw.v2, dw.window, opt) -
                   internal_energy_at_walls(topo, rm, n1, n2, dw.v1, dw.v2, dw.window, opt)) /
                  (2 * h1);
      std::vector<Interval> s1{{r_off[0], r_off[1]}, {r_off[2], r_off[3]}};
      std::vector<Interval> s2{{dw.window.lo, r_off[0]}, {r_off[1], r_off[2]},
                               {r_off[3], dw.window.hi}};
      double m1 = normalize_species(dw.v1, s1, n1, opt);
      double m2 = normalize_species(dw.v2, s2, n2, opt);
      double rho1 = m1 - dw.v1(r_off[j]);
      double rho2 = m2 - dw.v2(r_off[j]);
      int s_j = (j % 2 == 0) ? -1 : +1;  // leading species 2
      double analytic = s_j * 0.5 * (rho2 * rho2 - rho1 * rho1);
      c.require(std::abs(fd - analytic) <= 1e-5 * std::max(1.0, std::abs(analytic)),
                "dU/dR_" + std::to_string(j) + " matches central differences");
    }

    // analytic Hessian vs finite differences at the stationary point
    auto rep = assemble_hessian(cfg, EnsembleKind::FixedN, dw.beta, opt);
    const double h2 = 1e-3;
    auto u_at = [&](const std::vector<double>& r) {
      return internal_energy_at_walls(topo, r, n1, n2, dw.v1, dw.v2, dw.window, opt);
    };
    double u0 = u_at(cfg.r);
    for (int j = 0; j < 4; ++j) {
      for (int k = j; k < 4; ++k) {
        double fd;
        if (j == k) {
          auto rp = cfg.r, rm = cfg.r;
          rp[j] += h2;
          rm[j] -= h2;
          fd = (u_at(rp) - 2 * u0 + u_at(rm)) / (h2 * h2);
        } else {
          auto rpp = cfg.r, rpm = cfg.r, rmp = cfg.r, rmm = cfg.r;
          rpp[j] += h2;
          rpp[k] += h2;
          rpm[j] += h2;
          rpm[k] -= h2;
          rmp[j] -= h2;
          rmp[k] += h2;
          rmm[j] -= h2;
          rmm[k] -= h2;
          fd = (u_at(rpp) - u_at(rpm) - u_at(rmp) + u_at(rmm)) / (4 * h2 * h2);
        }
        c.require(std::abs(rep.h[j][k] - fd) <=
                      1e-4 * std::max({1.0, std::abs(rep.h[j][k]), std::abs(fd)}),
                  "Hessian[" + std::to_string(j) + "][" + std::to_string(k) + "] vs FD");
      }
    }
  });

  run("C5", "Fig 1: maximal stability pattern and ranking", [](Criterion& c) {
    DwSuite dw(0.8);
    const double mu1 = 0.9, v = 0.25;
    const double mu2 = mu1 - (1 - dw.beta) * v;
    double x_in = std::sqrt(0.5), x_out = std::sqrt(1.5);
    Problem p;
    p.alpha = 1.5;
    p.beta = dw.beta;
    p.ensemble = EnsembleKind::FixedN;
    p.n1 = dw.manufacture_n(dw.v1, mu1, {{-x_out, -x_in}, {x_in, x_out}});
    p.n2 = dw.manufacture_n(dw.v2, mu2,
                            {{dw.window.lo, -x_out}, {-x_in, x_in}, {x_out, dw.window.hi}});
    p.v1 = dw.v1;
    p.v2 = dw.v2;
    SolverOptions opt;
    opt.workers = 4;
    auto rep = solve_ground_state(p, opt);
    c.require(rep.regime == Regime::SeparatedFavored, "separated regime");
    c.require(!rep.ground_state.empty(), "ground state exists");
    if (rep.ground_state.empty()) return;

    const Candidate* stable_max = nullptr;
    const Candidate* swapped_max = nullptr;
    for (const auto& cand : rep.candidates) {
      if (!cand.walls || cand.walls->n_walls() != 4) continue;
      if (cand.walls->leading == Species::Two) stable_max = &cand;
      if (cand.walls->leading == Species::One) swapped_max = &cand;
    }
    c.require(stable_max != nullptr, "maximal configuration with species 1 in the wells found");
    c.require(swapped_max != nullptr, "swapped maximal configuration found");
    if (!stable_max || !swapped_max) return;

    c.require(stable_max->stable && stable_max->stability->positive_definite,
              "species-1-in-wells configuration is stable");
    c.require(!swapped_max->stable, "swapped configuration is unstable");
    bool negative_a = false;
    for (double a : swapped_max->stability->a)
      if (a < 0) negative_a = true;
    c.require(negative_a, "swapped configuration has a negative a_j");
    c.require(swapped_max->stability->thermo_overall == ThermoVerdict::Fail,
              "swapped configuration fails the thermodynamic-limit test");

    const auto& winner = rep.candidates[rep.ground_state.front()];
    c.require(winner.walls && winner.walls->n_walls() == 4 && winner.walls->is_maximal,
              "maximal configuration is the ground state");
    for (const auto& cand : rep.candidates) {
      if (&cand == &winner || !cand.stable || cand.excluded) continue;
      if (!cand.walls || cand.walls->n_walls() >= 4) continue;
      c.require(winner.energy < cand.energy - 1e-12,
                "maximal beats stable configurations with fewer walls");
    }
    if (rep.oracle) c.require(rep.oracle->agrees, "oracle agrees with the winner");
  });

  run("C6", "Fig 2: non-maximal exclusion in both ensembles", [](Criterion& c) {
    for (double beta : {0.8, 0.95}) {
      DwSuite dw(beta);
      const double v = 0.25;
      const double mu1 = 1.1;  // species 1 can cover the barrier
      const double mu2 = mu1 - (1 - beta) * v;
      double x_in = std::sqrt(0.5), x_out = std::sqrt(1.5);
      SolverOptions opt;

      // --- fixed N, type (a): species 1 around the barrier ---
      {
        double n1 = dw.manufacture_n(dw.v1, mu1, {{-x_in, x_in}});
        double n2 = dw.manufacture_n(dw.v2, mu2,
                                     {{dw.window.lo, -x_in}, {x_in, dw.window.hi}});
        Topology topo{2, Species::Two, false};
        std::string err;
        auto cfg = solve_fixed_n_from(topo, {-x_in, x_in}, n1, n2, dw.v1, dw.v2, dw.window, opt,
                                      &err);
        c.require(cfg.has_value(), "type (a) fixed-N stationary solve: " + err);
        if (cfg) {
          bool hit = false;
          for (const auto& f : nonmax_exclusion_fixed_n(*cfg, beta, opt))
            if (f.rule == "nonmax1" && f.triggered) hit = true;
          c.require(hit, "nonmax1 triggers at beta=" + std::to_string(beta));
        }
      }
      // --- fixed N, type (b): species 2 in the left well ---
      {
        double n2 = dw.manufacture_n(dw.v2, mu2, {{-x_out, -x_in}});
        double n1 = dw.manufacture_n(dw.v1, mu1,
                                     {{dw.window.lo, -x_out}, {-x_in, dw.window.hi}});
        Topology topo{2, Species::One, false};
        std::string err;
        auto cfg = solve_fixed_n_from(topo, {-x_out, -x_in}, n1, n2, dw.v1, dw.v2, dw.window, opt,
                                      &err);
        c.require(cfg.has_value(), "type (b) fixed-N stationary solve: " + err);
        if (cfg) {
          bool nonmax2 = false, zero_border = false;
          for (const auto& f : nonmax_exclusion_fixed_n(*cfg, beta, opt)) {
            if (f.rule == "nonmax2" && f.triggered) nonmax2 = true;
            if (f.rule == "zero_border" && f.triggered) zero_border = true;
          }
          c.require(nonmax2, "nonmax2 triggers at beta=" + std::to_string(beta));
          c.require(zero_border, "zero-bordered S1 interval is excluded");
        }
      }
      // --- fixed mu, both types from subset realizations ---
      {
        Topology ta{2, Species::Two, false};
        auto res = solve_fixed_mu(ta, mu1, mu2, dw.v1, dw.v2, dw.window, opt);
        const WallConfig* barrier = nullptr;
        const WallConfig* outer_pair = nullptr;
        for (const auto& k : res.configs) {
          if (k.r[0] > -1.0 && k.r[1] < 1.0) barrier = &k;
        }
        Topology tb{2, Species::One, false};
        auto res_b = solve_fixed_mu(tb, mu1, mu2, dw.v1, dw.v2, dw.window, opt);
        for (const auto& k : res_b.configs) {
          if (k.r[0] < -1.0 && k.r[1] > -1.0 && k.r[1] < 0.0) outer_pair = &k;
        }
        c.require(barrier != nullptr, "fixed-mu type (a) realization exists");
        c.require(outer_pair != nullptr, "fixed-mu type (b) realization exists");
        if (barrier) {
          bool hit = false;
          for (const auto& f : nonmax_exclusion_fixed_mu(*barrier, beta, opt))
            if (f.rule == "nonmax1_mu" && f.triggered) hit = true;
          c.require(hit, "grand-canonical nonmax1 triggers");
        }
        if (outer_pair) {
          bool hit = false, zero_border = false;
          for (const auto& f : nonmax_exclusion_fixed_mu(*outer_pair, beta, opt)) {
            if (f.rule == "nonmax2_mu" && f.triggered) hit = true;
            if (f.rule == "zero_border" && f.triggered) zero_border = true;
          }
          c.require(hit, "grand-canonical nonmax2 triggers");
          c.require(zero_border, "zero-bordered S1 excluded at fixed mu");
        }
      }
    }
  });

  run("C7", "oracle equivalence at fixed mu (sup-norm 1e-8, M=4001)", [](Criterion& c) {
    SolverOptions opt;
    opt.oracle_m = 4001;
    struct Case {
      Potential v1, v2;
      double mu1, mu2;
      std::optional<double> beta;
    };
    std::vector<Case> cases;
    cases.push_back({Potential::harmonic(1.0, 0.0), Potential::harmonic(0.8, 0.3), 1.0, 0.9, {}});
    auto dwv = Potential::double_well(1.0, 1.0);
    cases.push_back({dwv, dwv.scaled(0.8), 0.9, 0.85, 0.8});
    for (const auto& cs : cases) {
      for (double alpha : {0.25, 2.0}) {
        Problem p;
        p.alpha = alpha;
        p.beta = cs.beta;
        p.ensemble = EnsembleKind::FixedMu;
        p.mu1 = cs.mu1;
        p.mu2 = cs.mu2;
        p.v1 = cs.v1;
        p.v2 = cs.v2;
        auto rep = solve_ground_state(p, opt);
        c.require(!rep.ground_state.empty(), "winner exists");
        c.require(rep.oracle.has_value(), "oracle comparison ran");
        if (rep.oracle) {
          c.require(rep.oracle->kind == "pointwise" && rep.oracle->grid_m == 4001,
                    "pointwise oracle at M=4001");
          c.require(rep.oracle->sup_norm <= 1e-8,
                    "sup-norm " + std::to_string(rep.oracle->sup_norm) + " <= 1e-8 at alpha=" +
                        std::to_string(alpha));
          c.require(rep.oracle->agrees, "energies agree");
        }
      }
    }
  });

  run("C8", "oracle equivalence at fixed N (square well)", [](Criterion& c) {
    auto w = Potential::square_well(0.0, 1.0);
    auto grid = oracle::Grid::make({0.0, 1.0}, 2001, w, w);
    SolverOptions opt;
    opt.descent_restarts = 8;  // plus the two structured starts: 10 runs
    auto sep = oracle::projected_descent_fixed_n(grid, 1.0, 1.0, 2.0, opt);
    c.require(std::abs(sep.best.energy - 2.0) <= 1e-4,
              "alpha=2: U within 1e-4 of 2.0 (got " + std::to_string(sep.best.energy) + ")");
    auto mix = oracle::projected_descent_fixed_n(grid, 1.0, 1.0, 0.5, opt);
    double sup = 0;
    for (int i = 0; i < grid.m; ++i) {
      sup = std::max(sup, std::abs(mix.best.rho1[i] - 1.0));
      sup = std::max(sup, std::abs(mix.best.rho2[i] - 1.0));
    }
    c.require(sup <= 1e-6, "alpha=0.5: flat mixed profile within 1e-6 sup-norm");
  });

  run("C9", "local split test on random mixed segments", [](Criterion& c) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SolverOptions opt;
    int done = 0, attempts = 0;
    while (done < 50 && attempts < 500) {
      ++attempts;
      // random confining polynomial pair
      auto rand_poly = [&](double scale) {
        std::vector<double> coeffs(5, 0.0);
        for (int i = 0; i < 4; ++i) coeffs[i] = scale * (2 * u01(rng) - 1);
        coeffs[4] = 0.5 + u01(rng);
        return Potential::polynomial(coeffs);
      };
      auto v1 = rand_poly(0.5);
      auto v2 = rand_poly(0.5);
      double mu1 = 0.8 + u01(rng);
      double mu2 = 0.8 + u01(rng);
      double alpha = done % 2 == 0 ? 0.3 + 0.6 * u01(rng) : 1.2 + 1.5 * u01(rng);

      // find a point where both mixed densities are comfortably positive
      Interval window{-3.0, 3.0};
      double x0 = 0;
      bool found = false;
      for (int i = 0; i <= 200 && !found; ++i) {
        double x = window.lo + window.length() * i / 200;
        auto [r1, r2] = mixed_density(x, mu1, mu2, alpha, v1, v2);
        if (r1 > 0.1 && r2 > 0.1) {
          x0 = x;
          found = true;
        }
      }
      if (!found) continue;

      auto profile = profile_from_pieces(mu1, mu2, alpha, v1, v2,
                                         {{{x0 - 0.05, x0 + 0.05}, ProfilePiece::Kind::Mixed}});
      const double eps = 1e-3;
      auto res = local_split_test(profile, x0 - eps / 2, eps, opt);
      c.require((res.exact_delta > 0) == (alpha < 1.0),
                "sign of exact delta equals sign(1-alpha), alpha=" + std::to_string(alpha));

      // K = |exact - first order| / eps^2 stays bounded under halving
      double k_prev = -1;
      bool stable = true;
      for (double e = 1e-2; e >= 1e-4 / 2; e /= 2) {
        auto r = local_split_test(profile, x0 - e / 2, e, opt);
        double k = std::abs(r.exact_delta - r.first_order) / (e * e);
        if (k_prev >= 0 && k > 4.0 * std::max(k_prev, 1e-6) + 1e-9) stable = false;
        k_prev = k;
      }
      c.require(stable, "remainder constant stable under eps-halving");
      ++done;
    }
    c.require(done == 50, "50 random mixed segments tested (got " + std::to_string(done) + ")");
  });

  run("C10", "scaling invariance on random raw problems", [](Criterion& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SolverOptions opt;
    opt.oracle_check = false;  // the invariance statement is about the solver itself
    for (int trial = 0; trial < 25; ++trial) {
      // base problem in reduced units
      Problem base;
      base.alpha = trial % 2 == 0 ? 0.4 + 0.4 * u01(rng) : 1.3 + u01(rng);
      bool fixed_n = trial % 4 < 2;
      base.ensemble = fixed_n ? EnsembleKind::FixedN : EnsembleKind::FixedMu;
      int pot_kind = trial % 3;
      if (pot_kind == 0) {
        base.v1 = Potential::square_well(0.0, 1.0 + u01(rng));
        base.v2 = base.v1;
        base.beta = 1.0;
      } else if (pot_kind == 1) {
        base.v1 = Potential::harmonic(0.7 + u01(rng), 0.0);
        base.v2 = Potential::harmonic(0.7 + u01(rng), 0.2 * u01(rng));
      } else {
        base.v1 = Potential::double_well(1.0, 1.0);
        base.v2 = base.v1.scaled(0.8);
        base.beta = 0.8;
      }
      base.n1 = 0.5 + u01(rng);
      base.n2 = 0.5 + u01(rng);
      base.mu1 = 0.8 + 0.4 * u01(rng);
      base.mu2 = base.mu1 - 0.05 * u01(rng);

      auto direct = solve_ground_state(base, opt);

      // random raw couplings around the same physics
      RawParams raw;
      raw.u11 = 0.3 + 3.0 * u01(rng);
      raw.u22 = 0.3 + 3.0 * u01(rng);
      double s1 = std::sqrt(raw.u11), s2 = std::sqrt(raw.u22);
      raw.u12 = base.alpha * std::sqrt(raw.u11 * raw.u22);
      raw.ensemble = base.ensemble;
      raw.n1 = base.n1 / s1;
      raw.n2 = base.n2 / s2;
      raw.mu1 = base.mu1 * s1;
      raw.mu2 = base.mu2 * s2;
      raw.v1 = base.v1.scaled(s1);
      raw.v2 = base.v2.scaled(s2);

      auto red = to_reduced(raw);
      check_provenance(red, raw);
      auto via = solve_ground_state(Problem::from_reduced(red), opt);

      c.require(direct.regime == via.regime, "regime classification identical");
      c.require(direct.empty_ground_state == via.empty_ground_state, "feasibility identical");
      if (direct.empty_ground_state || direct.ground_state.empty() || via.ground_state.empty())
        continue;
      const auto& a = direct.candidates[direct.ground_state.front()];
      const auto& b = via.candidates[via.ground_state.front()];
      // energies are invariant under the scaling
      c.require(std::abs(a.energy - b.energy) <= 1e-9 * std::max(1.0, std::abs(a.energy)),
                "ground energy invariant");
      // supports and wall positions agree to root tolerance
      auto sa = a.profile.s1.intervals;
      auto sb = b.profile.s1.intervals;
      c.require(sa.size() == sb.size(), "support interval count");
      if (sa.size() == sb.size()) {
        for (std::size_t i = 0; i < sa.size(); ++i) {
          c.require(std::abs(sa[i].lo - sb[i].lo) <= 1e-7 && std::abs(sa[i].hi - sb[i].hi) <= 1e-7,
                    "support endpoints agree");
        }
      }
      if (a.walls && b.walls) {
        c.require(a.walls->r.size() == b.walls->r.size(), "wall count");
        for (std::size_t j = 0; j < std::min(a.walls->r.size(), b.walls->r.size()); ++j)
          c.require(std::abs(a.walls->r[j] - b.walls->r[j]) <= 1e-7, "wall positions unchanged");
      }
      // densities agree to 1e-10 relative after mapping back to raw units
      std::mt19937_64 srng(17 + trial);
      for (int s = 0; s < 20; ++s) {
        double x = direct.window.lo +
                   direct.window.length() * std::uniform_real_distribution<double>(0, 1)(srng);
        double da = a.profile.rho1(x);
        double db_raw = raw_density(Species::One, b.profile.rho1(x), raw);
        double da_raw = da / s1;  // direct solve is already in base (reduced) units
        c.require(std::abs(da_raw - db_raw) <= 1e-10 * std::max(1.0, std::abs(da_raw)) + 1e-8,
                  "densities agree after mapping back");
      }
    }
  });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
