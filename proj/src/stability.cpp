#include "tfps/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfps/errors.hpp"
#include "tfps/quadrature.hpp"

namespace tfps {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double wall_density(const WallConfig& cfg, double rj, const SolverOptions& opt) {
  double rho1 = cfg.mu1 - cfg.profile.v1.evaluate(rj);
  double rho2 = cfg.mu2 - cfg.profile.v2.evaluate(rj);
  double scale = std::max(1.0, std::max(rho1, rho2));
  if (std::abs(rho1 - rho2) > 1e3 * opt.tol.stat * scale)
    throw PreconditionError("hessian: configuration is not stationary (wall densities differ)");
  return 0.5 * (rho1 + rho2);
}

struct SlopeInfo {
  double value = 0;        // side-averaged phi'
  bool one_sided = false;  // sides disagree (wall on a potential breakpoint)
  double left = 0, right = 0;
};

SlopeInfo phi_slope_at(const WallConfig& cfg, double rj) {
  PhiFunction phi{&cfg.profile.v1, &cfg.profile.v2};
  SlopeInfo s;
  s.left = phi.slope(rj, Side::Left);
  s.right = phi.slope(rj, Side::Right);
  double scale = std::max({1.0, std::abs(s.left), std::abs(s.right)});
  s.one_sided = std::abs(s.left - s.right) > 1e-9 * scale;
  s.value = 0.5 * (s.left + s.right);
  return s;
}

// extremum of V over a support: interval endpoints plus interior stationary
// points of V
double support_extremum(const Potential& v, const Support& s, bool maximum,
                        const SolverOptions& opt) {
  double best = maximum ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
  auto consider = [&](double x) {
    double val = v.evaluate(x);
    if (!std::isfinite(val)) return;
    best = maximum ? std::max(best, val) : std::min(best, val);
  };
  for (const auto& iv : s.intervals) {
    consider(iv.lo);
    consider(iv.hi);
    if (!(iv.hi > iv.lo)) continue;
    ScanOptions sc = opt.scan();
    sc.cells = 512;
    auto stat = scan_roots([&](double x) { return v.derivative(x, Side::Right); },
                           [&](double x) {
                             // slope of V' estimated by a centered difference
                             double h = 1e-6 * std::max(1.0, std::abs(x));
                             return (v.derivative(x + h, Side::Right) -
                                     v.derivative(x - h, Side::Right)) /
                                    (2 * h);
                           },
                           {iv.lo, iv.hi}, sc, v.smoothness_breaks({iv.lo, iv.hi}));
    for (const auto& rt : stat) consider(rt.x);
  }
  return best;
}

}  // namespace

bool positive_definite(const Matrix& h, double pivot_tol_factor) {
  return ldlt_positive_definite(h, pivot_tol_factor);
}

std::vector<ThermoVerdict> thermo_limit_verdict(const WallConfig& cfg, const SolverOptions&) {
  std::vector<ThermoVerdict> out;
  out.reserve(cfg.r.size());
  double slope_scale = 1.0;
  for (std::size_t j = 0; j < cfg.r.size(); ++j) {
    auto s = phi_slope_at(cfg, cfg.r[j]);
    slope_scale = std::max({slope_scale, std::abs(s.left), std::abs(s.right)});
  }
  for (std::size_t j = 0; j < cfg.r.size(); ++j) {
    auto s = phi_slope_at(cfg, cfg.r[j]);
    double tol = 1e-9 * slope_scale;
    double left = cfg.label(static_cast<int>(j)) * s.left;
    double right = cfg.label(static_cast<int>(j)) * s.right;
    if (left > tol && right > tol)
      out.push_back(ThermoVerdict::Pass);
    else if (left < -tol && right < -tol)
      out.push_back(ThermoVerdict::Fail);
    else
      out.push_back(ThermoVerdict::Marginal);
  }
  return out;
}

NecessaryReport necessary_conditions(const std::vector<double>& a, double c) {
  NecessaryReport rep;
  rep.applicable = true;
  const int n = static_cast<int>(a.size());
  for (double aj : a)
    if (aj <= 0) ++rep.nonpositive_count;
  if (n == 0 || rep.nonpositive_count == 0) return rep;

  // pairwise bound a_i + a_j >= 0: the two smallest entries decide
  std::vector<double> sorted(a);
  std::sort(sorted.begin(), sorted.end());
  if (n >= 2 && sorted[0] + sorted[1] < 0) {
    rep.pass = false;
    rep.failed_condition = "pairwise bound a_i + a_j >= 0";
    return rep;
  }
  if (rep.nonpositive_count > 1) {
    // only possible when the offenders are all ~0; keep it flagged
    rep.pass = false;
    rep.failed_condition = "more than one nonpositive a_j";
    return rep;
  }
  // determinant bound for the single nonpositive entry
  double abar = sorted[0];
  double inv_sum = 0;
  bool first = true;
  for (double aj : sorted) {
    if (first && aj == abar) {
      first = false;
      continue;
    }
    inv_sum += 1.0 / aj;
  }
  double bound = c / (1.0 + c * inv_sum);
  if (!(std::abs(abar) < bound)) {
    rep.pass = false;
    rep.failed_condition = "determinant bound |a| < C/(1 + C sum 1/a_j)";
  }
  return rep;
}

HessianReport assemble_hessian(const WallConfig& cfg, EnsembleKind ensemble,
                               std::optional<double> beta, const SolverOptions& opt) {
  const int n = cfg.n_walls();
  // precondition: stationarity within tolerance
  for (std::size_t j = 0; j < cfg.r.size(); ++j) {
    double rho1 = cfg.mu1 - cfg.profile.v1.evaluate(cfg.r[j]);
    double scale = std::max(1.0, rho1);
    double phi = cfg.profile.v1.evaluate(cfg.r[j]) - cfg.profile.v2.evaluate(cfg.r[j]);
    if (std::abs((cfg.mu1 - cfg.mu2) - phi) > 1e3 * opt.tol.stat * scale)
      throw PreconditionError("assemble_hessian: input is not stationary");
  }

  HessianReport rep;
  rep.h = zero_matrix(n);
  rep.a.resize(n, 0.0);
  if (n == 0) {
    rep.min_eigenvalue = kNan;
    return rep;
  }

  double inv_len = 0;
  if (ensemble == EnsembleKind::FixedN) {
    double m1 = cfg.s1().measure();
    double m2 = cfg.s2().measure();
    inv_len = 1.0 / m1 + 1.0 / m2;
  }

  std::vector<double> rho(n), slope(n);
  for (int j = 0; j < n; ++j) {
    rho[j] = wall_density(cfg, cfg.r[j], opt);
    auto s = phi_slope_at(cfg, cfg.r[j]);
    slope[j] = s.value;
    if (s.one_sided) rep.used_one_sided_derivative = true;
  }

  for (int j = 0; j < n; ++j) {
    rep.a[j] = cfg.label(j) * rho[j] * slope[j];
    rep.h[j][j] = rep.a[j] + inv_len * rho[j] * rho[j];
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      if (ensemble == EnsembleKind::FixedN)
        rep.h[j][k] = cfg.label(j) * cfg.label(k) * inv_len * rho[j] * rho[k];
    }
  }
  // common wall density exists for proportional potentials
  if (beta && n > 0) rep.c = inv_len * rho[0] * rho[0];

  rep.positive_definite = positive_definite(rep.h);
  auto ev = symmetric_eigenvalues(rep.h);
  rep.min_eigenvalue = ev.empty() ? kNan : ev.front();

  rep.per_wall = thermo_limit_verdict(cfg, opt);
  rep.thermo_overall = ThermoVerdict::Pass;
  for (auto v : rep.per_wall) {
    if (v == ThermoVerdict::Fail) {
      rep.thermo_overall = ThermoVerdict::Fail;
      break;
    }
    if (v == ThermoVerdict::Marginal) rep.thermo_overall = ThermoVerdict::Marginal;
  }

  if (beta && ensemble == EnsembleKind::FixedN)
    rep.necessary = necessary_conditions(rep.a, rep.c);
  return rep;
}

namespace {

struct WallLevel {
  bool ok = false;
  double v = 0;
  std::string reason;
};

WallLevel common_wall_level(const WallConfig& cfg) {
  WallLevel wl;
  if (cfg.r.empty()) {
    wl.reason = "no walls";
    return wl;
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double rj : cfg.r) {
    double v = cfg.profile.v1.evaluate(rj);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo > 1e-8 * std::max(1.0, std::abs(hi))) {
    wl.reason = "walls are not iso-potential";
    return wl;
  }
  wl.ok = true;
  wl.v = 0.5 * (lo + hi);
  return wl;
}

ExclusionFinding not_applicable(const std::string& why) {
  ExclusionFinding f;
  f.rule = "not_applicable";
  f.detail = why;
  return f;
}

void add_zero_border_findings(const WallConfig& cfg, std::vector<ExclusionFinding>& out) {
  // intervals of the less self-interacting species' support cannot be
  // bordered by a density zero in the ground state
  for (const auto& iv : cfg.s1().intervals) {
    if (iv.lo_kind == EndpointKind::Zero || iv.hi_kind == EndpointKind::Zero) {
      ExclusionFinding f;
      f.rule = "zero_border";
      f.triggered = true;
      f.detail = "S1 interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                 "] is bordered by a density zero";
      out.push_back(f);
    }
  }
}

}  // namespace

std::vector<ExclusionFinding> nonmax_exclusion_fixed_n(const WallConfig& cfg, double beta,
                                                       const SolverOptions& opt) {
  std::vector<ExclusionFinding> out;
  if (!(beta > 0) || beta >= 1.0) {
    out.push_back(not_applicable("criteria derived for proportional potentials with beta < 1"));
    return out;
  }
  auto wl = common_wall_level(cfg);
  if (!wl.ok) {
    out.push_back(not_applicable(wl.reason));
    return out;
  }
  const double v = wl.v;
  const double mu1 = cfg.mu1, mu2 = cfg.mu2;
  const Potential& pot = cfg.profile.v1;

  add_zero_border_findings(cfg, out);

  double vbar1 = support_extremum(pot, cfg.s1(), true, opt);
  if (vbar1 > v + 1e-10 * std::max(1.0, std::abs(v))) {
    ExclusionFinding f;
    f.rule = "nonmax1";
    f.extremum = vbar1;
    f.rhs = 1.0 / beta;
    double den = mu1 - vbar1;
    f.lhs = den > 0 ? (mu1 - v) / den : std::numeric_limits<double>::infinity();
    f.triggered = f.lhs > f.rhs;
    f.detail = "potential reaches " + std::to_string(vbar1) + " > v inside S1";
    out.push_back(f);
  }
  double vbar2 = support_extremum(pot, cfg.s2(), false, opt);
  if (vbar2 < v - 1e-10 * std::max(1.0, std::abs(v))) {
    ExclusionFinding f;
    f.rule = "nonmax2";
    f.extremum = vbar2;
    f.rhs = beta;
    f.lhs = (mu2 - v) / (mu2 - vbar2);
    f.triggered = f.lhs < f.rhs;
    f.detail = "potential drops to " + std::to_string(vbar2) + " < v inside S2";
    out.push_back(f);
  }
  return out;
}

std::vector<ExclusionFinding> nonmax_exclusion_fixed_mu(const WallConfig& cfg, double beta,
                                                        const SolverOptions& opt) {
  std::vector<ExclusionFinding> out;
  if (!(beta > 0) || beta >= 1.0) {
    out.push_back(not_applicable("criteria derived for proportional potentials with beta < 1"));
    return out;
  }
  auto wl = common_wall_level(cfg);
  if (!wl.ok) {
    out.push_back(not_applicable(wl.reason));
    return out;
  }
  const double v = wl.v;
  const double mu1 = cfg.mu1, mu2 = cfg.mu2;
  const Potential& pot = cfg.profile.v1;

  add_zero_border_findings(cfg, out);

  // grand-canonical swap gain: occupying the high-potential point with the
  // other species wins when its TF density there is larger. The inequalities
  // are independent of v; equality is saturated at V-bar = v.
  double vbar1 = support_extremum(pot, cfg.s1(), true, opt);
  if (vbar1 > v + 1e-10 * std::max(1.0, std::abs(v))) {
    ExclusionFinding f;
    f.rule = "nonmax1_mu";
    f.extremum = vbar1;
    f.rhs = 1.0;
    double den = mu1 - vbar1;
    f.lhs = den > 0 ? (mu2 - beta * vbar1) / den : std::numeric_limits<double>::infinity();
    f.triggered = f.lhs > f.rhs;
    f.detail = "potential reaches " + std::to_string(vbar1) + " > v inside S1";
    out.push_back(f);
  }
  double vbar2 = support_extremum(pot, cfg.s2(), false, opt);
  if (vbar2 < v - 1e-10 * std::max(1.0, std::abs(v))) {
    ExclusionFinding f;
    f.rule = "nonmax2_mu";
    f.extremum = vbar2;
    f.rhs = 1.0;
    double den = mu2 - beta * vbar2;
    f.lhs = den > 0 ? (mu1 - vbar2) / den : std::numeric_limits<double>::infinity();
    f.triggered = f.lhs > f.rhs;
    f.detail = "potential drops to " + std::to_string(vbar2) + " < v inside S2";
    out.push_back(f);
  }
  return out;
}

SplitTestResult local_split_test_densities(const Real1D& rho1, const Real1D& rho2, double alpha,
                                           const Potential& v1, const Potential& v2, double x0,
                                           double epsilon, const SolverOptions& opt) {
  if (!(epsilon > 0)) throw ValidationError("local_split_test: epsilon must be positive");
  const double x1 = x0 + epsilon;
  auto splits = v1.smoothness_breaks({x0, x1});
  auto s2 = v2.smoothness_breaks({x0, x1});
  splits.insert(splits.end(), s2.begin(), s2.end());
  std::sort(splits.begin(), splits.end());

  double n1 = integrate_split(rho1, {x0, x1}, splits, opt.quad_nodes);
  double n2 = integrate_split(rho2, {x0, x1}, splits, opt.quad_nodes);
  if (!(n1 > 0) || !(n2 > 0))
    throw PreconditionError("local_split_test: both species must be present on the segment");

  double um = integrate_split(
      [&](double x) {
        double a = rho1(x), b = rho2(x);
        return 0.5 * (a * a + b * b) + alpha * a * b + v1.evaluate(x) * a + v2.evaluate(x) * b;
      },
      {x0, x1}, splits, opt.quad_nodes);

  // flat separated replacement with |w2|/|w1| = n2/n1
  double w1 = epsilon * n1 / (n1 + n2);
  double y = x0 + w1;
  double flat = (n1 + n2) / epsilon;  // both flat densities coincide
  double us = 0.5 * flat * flat * epsilon;
  us += flat *
        integrate_split([&](double x) { return v1.evaluate(x); }, {x0, y}, splits, opt.quad_nodes);
  us += flat *
        integrate_split([&](double x) { return v2.evaluate(x); }, {y, x1}, splits, opt.quad_nodes);

  SplitTestResult res;
  res.exact_delta = us - um;
  res.first_order = epsilon * (1.0 - alpha) * (n1 / epsilon) * (n2 / epsilon);
  return res;
}

SplitTestResult local_split_test(const DensityProfile& profile, double x0, double epsilon,
                                 const SolverOptions& opt) {
  const double x1 = x0 + epsilon;
  const ProfilePiece* mixed = nullptr;
  for (const auto& piece : profile.pieces) {
    if (piece.kind == ProfilePiece::Kind::Mixed && piece.span.lo < x0 && x1 < piece.span.hi)
      mixed = &piece;
  }
  if (!mixed)
    throw PreconditionError("local_split_test: segment must lie strictly inside a mixed region");
  return local_split_test_densities([&](double x) { return profile.rho1(x); },
                                    [&](double x) { return profile.rho2(x); }, profile.alpha,
                                    profile.v1, profile.v2, x0, epsilon, opt);
}

}  // namespace tfps
