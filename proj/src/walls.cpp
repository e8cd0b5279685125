#include "tfps/walls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfps/errors.hpp"
#include "tfps/linalg.hpp"
#include "tfps/quadrature.hpp"

namespace tfps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ScanOptions slot_scan(const SolverOptions& opt, Interval slot, Interval window) {
  ScanOptions s = opt.scan();
  double frac = slot.length() / std::max(window.length(), 1e-300);
  s.cells = std::clamp(static_cast<int>(opt.scan_cells * frac) + 32, 256, opt.scan_cells);
  return s;
}

std::vector<double> slot_bounds(const std::vector<double>& r, Interval window) {
  std::vector<double> bounds;
  bounds.reserve(r.size() + 2);
  bounds.push_back(window.lo);
  for (double x : r) bounds.push_back(x);
  bounds.push_back(window.hi);
  return bounds;
}

std::vector<Interval> species_slots(const std::vector<double>& r, Species leading, Species k,
                                    Interval window) {
  auto bounds = slot_bounds(r, window);
  std::vector<Interval> slots;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Species s = (i % 2 == 0) ? leading : other(leading);
    if (s == k && bounds[i + 1] > bounds[i]) slots.push_back({bounds[i], bounds[i + 1]});
  }
  return slots;
}

double species_number(const Potential& vk, double mu, const std::vector<Interval>& slots,
                      Interval window, const SolverOptions& opt, double* measure_out = nullptr) {
  double n = 0, meas = 0;
  for (const auto& slot : slots) {
    if (!(slot.length() > 0)) continue;
    auto sub = vk.sublevel_set(mu, slot, slot_scan(opt, slot, window));
    for (const auto& part : sub.parts()) {
      meas += part.length();
      n += integrate_split([&](double x) { return mu - vk.evaluate(x); }, part,
                           vk.smoothness_breaks(part), opt.quad_nodes);
    }
  }
  if (measure_out) *measure_out = meas;
  return n;
}

double sampled_min(const Potential& vk, const std::vector<Interval>& slots) {
  double vmin = kInf;
  for (const auto& slot : slots) {
    const int n = 257;
    for (int i = 0; i <= n; ++i) {
      double v = vk.evaluate(slot.lo + slot.length() * i / n);
      if (std::isfinite(v)) vmin = std::min(vmin, v);
    }
  }
  return vmin;
}

struct NormalizeResult {
  double mu = 0;
  double measure = 0;
};

NormalizeResult normalize_impl(const Potential& vk, const std::vector<Interval>& slots,
                               double target, Interval window, const SolverOptions& opt) {
  if (!(target > 0))
    throw PreconditionError("normalize_species: target particle number must be > 0");
  double vmin = sampled_min(vk, slots);
  if (!std::isfinite(vmin))
    throw PreconditionError("normalize_species: potential is infinite on all slots");

  double lo = vmin, hi = vmin + 1.0;
  double n_hi = species_number(vk, hi, slots, window, opt);
  for (int i = 0; i < 200 && n_hi < target; ++i) {
    hi = vmin + (hi - vmin) * 2.0;
    n_hi = species_number(vk, hi, slots, window, opt);
  }
  if (n_hi < target) throw ConvergenceError("normalize_species: could not bracket the target");

  double mu = hi;
  double meas = 0;
  for (int it = 0; it < 100; ++it) {
    double n = species_number(vk, mu, slots, window, opt, &meas);
    double err = n - target;
    if (std::abs(err) <= 1e-13 * std::max(1.0, target)) return {mu, meas};
    if (err > 0)
      hi = mu;
    else
      lo = mu;
    double next = meas > 0 ? mu - err / meas : 0.5 * (lo + hi);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == mu) return {mu, meas};
    mu = next;
  }
  double n = species_number(vk, mu, slots, window, opt, &meas);
  if (std::abs(n - target) > opt.tol.norm * std::max(1.0, target))
    throw ConvergenceError("normalize_species: no convergence to relative tolerance");
  return {mu, meas};
}

bool near_any(double x, const std::vector<double>& pts, double tol) {
  for (double p : pts)
    if (std::abs(x - p) <= tol) return true;
  return false;
}

// combinations of {0..m-1} choose n, lexicographic, capped
std::vector<std::vector<int>> combinations(int m, int n, int cap) {
  std::vector<std::vector<int>> out;
  if (n > m || n < 0) return out;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    if (static_cast<int>(out.size()) >= cap) break;
    int i = n - 1;
    while (i >= 0 && idx[i] == m - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct ResidualEval {
  std::vector<double> res;
  double mu1 = 0, mu2 = 0;
  double m1 = 0, m2 = 0;  // support measures
  double norm = 0;
};

ResidualEval eval_residual(const std::vector<double>& r, Species leading, double n1, double n2,
                           const Potential& v1, const Potential& v2, Interval window,
                           const SolverOptions& opt) {
  auto slots1 = species_slots(r, leading, Species::One, window);
  auto slots2 = species_slots(r, leading, Species::Two, window);
  if (slots1.empty() || slots2.empty())
    throw PreconditionError("fixed-N walls: a species has no slot to live in");
  auto nr1 = normalize_impl(v1, slots1, n1, window, opt);
  auto nr2 = normalize_impl(v2, slots2, n2, window, opt);
  ResidualEval ev;
  ev.mu1 = nr1.mu;
  ev.mu2 = nr2.mu;
  ev.m1 = nr1.measure;
  ev.m2 = nr2.measure;
  ev.res.resize(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    ev.res[j] = (ev.mu1 - ev.mu2) - (v1.evaluate(r[j]) - v2.evaluate(r[j]));
    ev.norm = std::max(ev.norm, std::abs(ev.res[j]));
  }
  return ev;
}

}  // namespace

std::vector<double> stationarity_residual(const WallConfig& cfg) {
  std::vector<double> res(cfg.r.size());
  for (std::size_t j = 0; j < cfg.r.size(); ++j) {
    double phi = cfg.profile.v1.evaluate(cfg.r[j]) - cfg.profile.v2.evaluate(cfg.r[j]);
    res[j] = (cfg.mu1 - cfg.mu2) - phi;
  }
  return res;
}

double proportional_wall_level(double mu1, double mu2, double beta) {
  if (beta == 1.0)
    throw DegenerateError("proportional_wall_level: beta=1 makes the wall level undefined");
  return (mu1 - mu2) / (1.0 - beta);
}

std::vector<Topology> enumerate_topologies(const Potential& v1, const Potential& v2, int max_walls,
                                           Interval window, const SolverOptions& opt) {
  PhiFunction phi{&v1, &v2};
  int bound;
  if (phi.is_flat(window)) {
    bound = 1;  // level sets are continua; the selection principle caps walls
  } else {
    bound = phi.monotone_piece_bound(window, opt.scan());
  }
  if (max_walls >= 0) bound = std::min(bound, max_walls);
  std::vector<Topology> topos;
  for (int n = 0; n <= bound; ++n) {
    for (Species lead : {Species::One, Species::Two}) {
      topos.push_back({n, lead, n == bound && n > 0});
    }
  }
  return topos;
}

double normalize_species(const Potential& vk, const std::vector<Interval>& slots, double target,
                         const SolverOptions& opt) {
  Interval window{slots.front().lo, slots.back().hi};
  return normalize_impl(vk, slots, target, window, opt).mu;
}

SupportBuild build_separated_profile(const std::vector<double>& r, Species leading, double mu1,
                                     double mu2, const Potential& v1, const Potential& v2,
                                     Interval window, const SolverOptions& opt) {
  SupportBuild out;
  auto bounds = slot_bounds(r, window);
  double touch_tol = std::max(1e-8 * std::max(1.0, window.length()), 100 * opt.tol.root);
  std::vector<ProfilePiece> pieces;

  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Interval slot{bounds[i], bounds[i + 1]};
    if (!(slot.length() > 0)) continue;
    Species k = (i % 2 == 0) ? leading : other(leading);
    const Potential& vk = k == Species::One ? v1 : v2;
    double mu = k == Species::One ? mu1 : mu2;
    auto sub = vk.sublevel_set(mu, slot, slot_scan(opt, slot, window));

    bool has_left_wall = i > 0;
    bool has_right_wall = i + 2 < bounds.size();
    bool touches_left = false, touches_right = false;
    for (auto part : sub.parts()) {
      if (part.lo - slot.lo <= touch_tol) {
        part.lo = slot.lo;
        touches_left = true;
      }
      if (slot.hi - part.hi <= touch_tol) {
        part.hi = slot.hi;
        touches_right = true;
      }
      if (!(part.length() > 0)) continue;
      pieces.push_back(
          {part, k == Species::One ? ProfilePiece::Kind::Single1 : ProfilePiece::Kind::Single2});
      if (!has_left_wall && part.lo <= window.lo + touch_tol && !vk.hard_window())
        out.touches_window_edge = true;
      if (!has_right_wall && part.hi >= window.hi - touch_tol && !vk.hard_window())
        out.touches_window_edge = true;
    }
    if (has_left_wall && !touches_left) {
      out.reason = "support does not reach the wall at " + std::to_string(slot.lo);
      return out;
    }
    if (has_right_wall && !touches_right) {
      out.reason = "support does not reach the wall at " + std::to_string(slot.hi);
      return out;
    }
  }
  // wall densities must be nonnegative
  for (double w : r) {
    double d1 = mu1 - v1.evaluate(w);
    double d2 = mu2 - v2.evaluate(w);
    if (d1 < -1e-9 * std::max(1.0, std::abs(mu1)) || d2 < -1e-9 * std::max(1.0, std::abs(mu2))) {
      out.reason = "negative density at wall " + std::to_string(w);
      return out;
    }
  }
  out.profile = profile_from_pieces(mu1, mu2, 0.0, v1, v2, std::move(pieces), r);
  out.feasible = true;
  return out;
}

namespace {

void finalize_config(WallConfig& cfg, const Potential& v1, const Potential& v2, Interval window,
                     const SolverOptions& opt) {
  auto nn = particle_numbers(cfg.profile, opt.quad_nodes);
  cfg.n1 = nn.first;
  cfg.n2 = nn.second;
  cfg.residuals = stationarity_residual(cfg);

  // maximality: a wall at every transversal solution of phi = mu1 - mu2
  PhiFunction phi{&v1, &v2};
  cfg.is_maximal = false;
  if (!cfg.r.empty() && !phi.is_flat(window)) {
    try {
      auto roots = phi.level_set(cfg.mu1 - cfg.mu2, window, opt.scan());
      std::vector<double> transversal;
      for (const auto& rt : roots)
        if (!rt.tangential) transversal.push_back(rt.x);
      double tol = 1e-6 * std::max(1.0, window.length());
      if (transversal.size() == cfg.r.size()) {
        bool all = true;
        for (std::size_t j = 0; j < cfg.r.size(); ++j)
          if (std::abs(transversal[j] - cfg.r[j]) > tol) all = false;
        cfg.is_maximal = all;
      }
    } catch (const DegenerateError&) {
    }
  }

  auto breaks1 = v1.smoothness_breaks(window);
  auto breaks2 = v2.smoothness_breaks(window);
  double btol = std::max(1e-9 * std::max(1.0, window.length()), 10 * opt.tol.root);
  for (double w : cfg.r)
    if ((!v1.is_square_well() && near_any(w, breaks1, btol)) ||
        (!v2.is_square_well() && near_any(w, breaks2, btol)))
      cfg.wall_at_breakpoint = true;
}

std::optional<WallConfig> solve_fixed_n_impl(const Topology& topo, std::vector<double> r,
                                             double n1, double n2, const Potential& v1,
                                             const Potential& v2, Interval window,
                                             const SolverOptions& opt, std::string* error,
                                             int collapse_depth) {
  auto fail = [&](const std::string& msg) -> std::optional<WallConfig> {
    if (error) *error = msg;
    return std::nullopt;
  };
  const int n = static_cast<int>(r.size());
  PhiFunction phi{&v1, &v2};
  const double collision_gap = std::max(1e3 * opt.tol.root, 1e-9 * window.length());

  ResidualEval ev;
  try {
    ev = eval_residual(r, topo.leading, n1, n2, v1, v2, window, opt);
  } catch (const Error& e) {
    return fail(std::string("initial residual: ") + e.what());
  }

  int stall = 0;
  for (int it = 0; it < 80; ++it) {
    bool done = true;
    for (int j = 0; j < n; ++j) {
      double rho = std::max({1.0, ev.mu1 - v1.evaluate(r[j]), ev.mu2 - v2.evaluate(r[j])});
      if (std::abs(ev.res[j]) > 1e-13 * rho) done = false;
    }
    if (done) break;

    Matrix jac = zero_matrix(n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        int s_i = ((i % 2 == 0) == (topo.leading == Species::One)) ? +1 : -1;
        double rho1 = ev.mu1 - v1.evaluate(r[i]);
        double rho2 = ev.mu2 - v2.evaluate(r[i]);
        jac[j][i] = -s_i * (rho1 / std::max(ev.m1, 1e-12) + rho2 / std::max(ev.m2, 1e-12));
        if (i == j) jac[j][i] -= phi.slope(r[j], Side::Right);
      }
    }
    std::vector<double> rhs(n);
    for (int j = 0; j < n; ++j) rhs[j] = -ev.res[j];
    std::vector<double> step;
    try {
      step = solve_linear(jac, rhs);
    } catch (const Error&) {
      return fail("singular stationarity Jacobian");
    }

    // clip so the wall ordering (and window membership) is preserved
    double lambda = 1.0;
    for (int j = 0; j < n; ++j) {
      double gap_lo = r[j] - (j > 0 ? r[j - 1] : window.lo);
      double gap_hi = (j + 1 < n ? r[j + 1] : window.hi) - r[j];
      double cap = 0.45 * std::min(gap_lo, gap_hi);
      if (std::abs(step[j]) > cap) lambda = std::min(lambda, cap / std::abs(step[j]));
    }

    bool accepted = false;
    for (int bt = 0; bt < 8 && !accepted; ++bt) {
      std::vector<double> rt(r);
      for (int j = 0; j < n; ++j) rt[j] += lambda * step[j];
      ResidualEval evt;
      try {
        evt = eval_residual(rt, topo.leading, n1, n2, v1, v2, window, opt);
      } catch (const Error&) {
        lambda *= 0.5;
        continue;
      }
      if (evt.norm <= (1.0 - 1e-4 * lambda) * ev.norm) {
        r = rt;
        ev = evt;
        accepted = true;
      } else {
        lambda *= 0.5;
      }
    }
    if (!accepted) {
      if (++stall >= 3)
        return fail("stationarity iteration stalled, last residual " + std::to_string(ev.norm));
    } else {
      stall = 0;
    }

    // wall collision: collapse the pair and restart on the reduced topology
    for (int j = 0; j + 1 < n; ++j) {
      if (r[j + 1] - r[j] < collision_gap) {
        if (collapse_depth > 4) return fail("walls keep collapsing");
        std::vector<double> reduced(r);
        reduced.erase(reduced.begin() + j, reduced.begin() + j + 2);
        Topology sub{static_cast<int>(reduced.size()), topo.leading, false};
        auto cfg = solve_fixed_n_impl(sub, std::move(reduced), n1, n2, v1, v2, window, opt, error,
                                      collapse_depth + 1);
        if (cfg) cfg->topology_transition = true;
        return cfg;
      }
    }
  }

  for (int j = 0; j < n; ++j) {
    double rho = std::max({1.0, ev.mu1 - v1.evaluate(r[j]), ev.mu2 - v2.evaluate(r[j])});
    if (std::abs(ev.res[j]) > opt.tol.stat * rho)
      return fail("no convergence: residual " + std::to_string(ev.norm));
  }

  auto build = build_separated_profile(r, topo.leading, ev.mu1, ev.mu2, v1, v2, window, opt);
  if (!build.feasible) return fail("infeasible at convergence: " + build.reason);

  WallConfig cfg;
  cfg.r = std::move(r);
  cfg.leading = topo.leading;
  cfg.mu1 = ev.mu1;
  cfg.mu2 = ev.mu2;
  cfg.profile = std::move(build.profile);
  cfg.touches_window_edge = build.touches_window_edge;
  finalize_config(cfg, v1, v2, window, opt);
  return cfg;
}

}  // namespace

std::optional<WallConfig> solve_fixed_n_from(const Topology& topo, std::vector<double> r0,
                                             double n1, double n2, const Potential& v1,
                                             const Potential& v2, Interval window,
                                             const SolverOptions& opt, std::string* error) {
  if (static_cast<int>(r0.size()) != topo.n_walls)
    throw ValidationError("solve_fixed_n_from: wall count does not match the topology");
  if (!std::is_sorted(r0.begin(), r0.end()))
    throw ValidationError("solve_fixed_n_from: walls must be sorted");
  if (topo.n_walls == 0) {
    double absent = topo.leading == Species::One ? n2 : n1;
    double present = topo.leading == Species::One ? n1 : n2;
    if (absent > 0) {
      if (error) *error = "empty-species skeleton with nonzero particle number";
      return std::nullopt;
    }
    const Potential& vk = topo.leading == Species::One ? v1 : v2;
    double mu = normalize_impl(vk, {window}, present, window, opt).mu;
    double mu1 = topo.leading == Species::One ? mu : 0.0;
    double mu2 = topo.leading == Species::One ? 0.0 : mu;
    auto build = build_separated_profile({}, topo.leading, mu1, mu2, v1, v2, window, opt);
    if (!build.feasible) {
      if (error) *error = build.reason;
      return std::nullopt;
    }
    WallConfig cfg;
    cfg.leading = topo.leading;
    cfg.mu1 = mu1;
    cfg.mu2 = mu2;
    cfg.profile = std::move(build.profile);
    finalize_config(cfg, v1, v2, window, opt);
    return cfg;
  }
  return solve_fixed_n_impl(topo, std::move(r0), n1, n2, v1, v2, window, opt, error, 0);
}

FixedNResult solve_fixed_n(const Topology& topo, double n1, double n2, const Potential& v1,
                           const Potential& v2, Interval window, const SolverOptions& opt) {
  FixedNResult result;
  auto note = [&](const std::string& s) { result.diagnostics.push_back(s); };

  if (topo.n_walls == 0) {
    std::string err;
    auto cfg = solve_fixed_n_from(topo, {}, n1, n2, v1, v2, window, opt, &err);
    if (cfg)
      result.configs.push_back(std::move(*cfg));
    else
      note("n=0 leading " + std::to_string(species_index(topo.leading)) + ": " + err);
    return result;
  }
  if (!(n1 > 0) || !(n2 > 0)) {
    note("populated skeleton needs N1, N2 > 0");
    return result;
  }

  // flat-density chemical-potential estimates seed the wall level
  double mu10, mu20;
  try {
    mu10 = normalize_impl(v1, {window}, n1, window, opt).mu;
    mu20 = normalize_impl(v2, {window}, n2, window, opt).mu;
  } catch (const Error& e) {
    note(std::string("estimate failed: ") + e.what());
    return result;
  }

  PhiFunction phi{&v1, &v2};
  std::vector<std::vector<double>> starts;

  if (phi.is_flat(window)) {
    if (topo.n_walls == 1) {
      double share = (topo.leading == Species::One ? n1 : n2) / (n1 + n2);
      starts.push_back({window.lo + window.length() * share});
    } else {
      note("flat phi: degenerate continuum, only single-wall skeletons are solved");
      return result;
    }
  } else {
    double level0 = mu10 - mu20;
    std::vector<double> samples;
    for (int i = 0; i <= 1024; ++i) {
      double p = phi(window.lo + window.length() * i / 1024);
      if (std::isfinite(p)) samples.push_back(p);
    }
    std::sort(samples.begin(), samples.end());
    std::vector<double> levels{level0};
    for (int q = 1; q < 20; ++q) levels.push_back(samples[samples.size() * q / 20]);

    int sets_used = 0;
    std::vector<std::vector<double>> root_sets;
    for (double lev : levels) {
      if (sets_used >= 4) break;
      std::vector<double> roots;
      try {
        for (const auto& rt : phi.level_set(lev, window, opt.scan()))
          if (!rt.tangential) roots.push_back(rt.x);
      } catch (const DegenerateError&) {
        continue;
      }
      if (static_cast<int>(roots.size()) < topo.n_walls) continue;
      bool dup = false;
      for (const auto& rs : root_sets) {
        if (rs.size() == roots.size()) {
          double d = 0;
          for (std::size_t i = 0; i < rs.size(); ++i) d = std::max(d, std::abs(rs[i] - roots[i]));
          if (d < 1e-3 * window.length()) dup = true;
        }
      }
      if (dup) continue;
      root_sets.push_back(roots);
      ++sets_used;
    }
    if (root_sets.empty()) {
      note("no level with enough transversal roots for n=" + std::to_string(topo.n_walls));
      return result;
    }
    for (const auto& roots : root_sets) {
      int m = static_cast<int>(roots.size());
      for (const auto& comb : combinations(m, topo.n_walls, opt.max_realizations)) {
        std::vector<double> r0(comb.size());
        for (std::size_t i = 0; i < comb.size(); ++i) r0[i] = roots[comb[i]];
        // each slot must be able to host its species at the estimated mu
        auto bounds = slot_bounds(r0, window);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < bounds.size() && ok; ++i) {
          Species k = (i % 2 == 0) ? topo.leading : other(topo.leading);
          const Potential& vk = k == Species::One ? v1 : v2;
          double mu_est = k == Species::One ? mu10 : mu20;
          double vmin = sampled_min(vk, {{bounds[i], bounds[i + 1]}});
          if (!(vmin < mu_est)) ok = false;
        }
        if (ok) starts.push_back(std::move(r0));
      }
    }
  }

  for (const auto& r0 : starts) {
    std::string err;
    auto cfg = solve_fixed_n_impl(topo, r0, n1, n2, v1, v2, window, opt, &err, 0);
    if (!cfg) {
      note("start rejected: " + err);
      continue;
    }
    if (cfg->n_walls() != topo.n_walls)
      note("topology transition: walls collapsed to n=" + std::to_string(cfg->n_walls()));
    bool dup = false;
    for (const auto& existing : result.configs) {
      if (existing.n_walls() != cfg->n_walls() || existing.leading != cfg->leading) continue;
      double d = 0;
      for (int j = 0; j < cfg->n_walls(); ++j)
        d = std::max(d, std::abs(existing.r[j] - cfg->r[j]));
      if (d <= 1e-6 * std::max(1.0, window.length())) dup = true;
    }
    if (!dup) result.configs.push_back(std::move(*cfg));
  }

  std::sort(result.configs.begin(), result.configs.end(),
            [](const WallConfig& a, const WallConfig& b) {
              if (a.n_walls() != b.n_walls()) return a.n_walls() < b.n_walls();
              return a.r < b.r;
            });
  return result;
}

FixedMuResult solve_fixed_mu(const Topology& topo, double mu1, double mu2, const Potential& v1,
                             const Potential& v2, Interval window, const SolverOptions& opt) {
  FixedMuResult result;
  PhiFunction phi{&v1, &v2};
  const double dmu = mu1 - mu2;

  if (topo.n_walls == 0) {
    const Potential& vk = topo.leading == Species::One ? v1 : v2;
    double mu = topo.leading == Species::One ? mu1 : mu2;
    auto sub = vk.sublevel_set(mu, window, opt.scan());
    if (!(sub.measure() > 0)) {
      result.skipped.push_back("n=0: species has empty support");
      return result;
    }
    double m1 = topo.leading == Species::One ? mu1 : 0.0;
    double m2 = topo.leading == Species::Two ? mu2 : 0.0;
    auto build = build_separated_profile({}, topo.leading, m1, m2, v1, v2, window, opt);
    if (!build.feasible) {
      result.skipped.push_back("n=0: " + build.reason);
      return result;
    }
    WallConfig cfg;
    cfg.leading = topo.leading;
    cfg.mu1 = m1;
    cfg.mu2 = m2;
    cfg.profile = std::move(build.profile);
    finalize_config(cfg, v1, v2, window, opt);
    result.configs.push_back(std::move(cfg));
    return result;
  }

  double flat_value = 0;
  if (phi.is_flat(window, &flat_value)) {
    if (std::abs(flat_value - dmu) <= 1e-12 * std::max(1.0, std::abs(dmu))) {
      // every point solves the wall equation: continuum of stationary configs
      result.degenerate_continuum = true;
    } else {
      result.skipped.push_back("wall level misses the flat phi value: no stationary walls");
    }
    return result;
  }

  std::vector<double> roots;
  try {
    for (const auto& rt : phi.level_set(dmu, window, opt.scan())) {
      if (rt.tangential)
        ++result.tangential_roots_excluded;
      else
        roots.push_back(rt.x);
    }
  } catch (const DegenerateError&) {
    result.degenerate_continuum = true;
    return result;
  }
  const int m = static_cast<int>(roots.size());
  if (m < topo.n_walls) {
    result.skipped.push_back("insufficient roots: phi level has " + std::to_string(m) +
                             " transversal solutions, skeleton needs " +
                             std::to_string(topo.n_walls));
    return result;
  }

  for (const auto& comb : combinations(m, topo.n_walls, opt.max_realizations)) {
    std::vector<double> r(comb.size());
    for (std::size_t i = 0; i < comb.size(); ++i) r[i] = roots[comb[i]];
    bool positive = true;
    for (double w : r)
      if (mu1 - v1.evaluate(w) < -1e-9 * std::max(1.0, std::abs(mu1))) positive = false;
    if (!positive) {
      result.skipped.push_back("negative wall density");
      continue;
    }
    auto build = build_separated_profile(r, topo.leading, mu1, mu2, v1, v2, window, opt);
    if (!build.feasible) {
      result.skipped.push_back(build.reason);
      continue;
    }
    WallConfig cfg;
    cfg.r = std::move(r);
    cfg.leading = topo.leading;
    cfg.mu1 = mu1;
    cfg.mu2 = mu2;
    cfg.profile = std::move(build.profile);
    cfg.touches_window_edge = build.touches_window_edge;
    finalize_config(cfg, v1, v2, window, opt);
    result.configs.push_back(std::move(cfg));
  }
  return result;
}

double internal_energy_at_walls(const Topology& topo, const std::vector<double>& r, double n1,
                                double n2, const Potential& v1, const Potential& v2,
                                Interval window, const SolverOptions& opt) {
  auto slots1 = species_slots(r, topo.leading, Species::One, window);
  auto slots2 = species_slots(r, topo.leading, Species::Two, window);
  auto nr1 = normalize_impl(v1, slots1, n1, window, opt);
  auto nr2 = normalize_impl(v2, slots2, n2, window, opt);
  auto build = build_separated_profile(r, topo.leading, nr1.mu, nr2.mu, v1, v2, window, opt);
  if (!build.feasible)
    throw PreconditionError("internal_energy_at_walls: infeasible configuration: " + build.reason);
  return internal_energy(build.profile, opt.quad_nodes);
}

}  // namespace tfps
