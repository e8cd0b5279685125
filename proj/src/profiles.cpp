#include "tfps/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfps/errors.hpp"
#include "tfps/quadrature.hpp"

namespace tfps {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

EndpointKind classify_endpoint(double x, const Potential& v, const std::vector<double>& walls,
                               double tol) {
  for (double w : walls)
    if (near(x, w, tol)) return EndpointKind::Wall;
  if (const auto* sw = v.as_square_well()) {
    if (near(x, sw->a, tol) || near(x, sw->b, tol)) return EndpointKind::SquareWellEdge;
  }
  return EndpointKind::Zero;
}

Support build_support(const std::vector<Interval>& spans, const Potential& v,
                      const std::vector<double>& walls, double tol) {
  std::vector<Interval> sorted = spans;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
  Support s;
  for (const auto& sp : sorted) {
    if (!s.intervals.empty() && sp.lo - s.intervals.back().hi <= tol) {
      s.intervals.back().hi = std::max(s.intervals.back().hi, sp.hi);
    } else {
      s.intervals.push_back({sp.lo, sp.hi, EndpointKind::Zero, EndpointKind::Zero});
    }
  }
  for (auto& iv : s.intervals) {
    iv.lo_kind = classify_endpoint(iv.lo, v, walls, tol);
    iv.hi_kind = classify_endpoint(iv.hi, v, walls, tol);
  }
  return s;
}

const ProfilePiece* find_piece(const DensityProfile& p, double x) {
  for (const auto& piece : p.pieces) {
    if (x >= piece.span.lo && x <= piece.span.hi) return &piece;
    if (piece.span.lo > x) break;
  }
  return nullptr;
}

}  // namespace

double Support::measure() const {
  double m = 0;
  for (const auto& iv : intervals) m += iv.hi - iv.lo;
  return m;
}

IntervalSet Support::as_interval_set() const {
  IntervalSet s;
  for (const auto& iv : intervals) s.add({iv.lo, iv.hi});
  return s;
}

bool Support::contains(double x, double tol) const {
  for (const auto& iv : intervals)
    if (x >= iv.lo - tol && x <= iv.hi + tol) return true;
  return false;
}

std::pair<double, double> mixed_density(double x, double mu1, double mu2, double alpha,
                                        const Potential& v1, const Potential& v2) {
  if (alpha == 1.0)
    throw DegenerateError("mixed_density: densities are not defined at the threshold alpha=1");
  double t1 = mu1 - v1.evaluate(x);
  double t2 = mu2 - v2.evaluate(x);
  double den = 1.0 - alpha * alpha;
  return {(t1 - alpha * t2) / den, (t2 - alpha * t1) / den};
}

double single_density(Species k, double x, double mu_k, const Potential& v_k) {
  (void)k;
  return mu_k - v_k.evaluate(x);
}

IntervalSet mixed_support_filter(double mu1, double mu2, double alpha, const Potential& v1,
                                 const Potential& v2, Interval window, const ScanOptions& opt) {
  if (alpha == 1.0)
    throw DegenerateError("mixed_support_filter: undefined at the threshold alpha=1");
  // both mixed densities >= 0; the numerators flip sign with 1 - alpha^2
  const double inf = std::numeric_limits<double>::infinity();
  double sgn = alpha < 1.0 ? 1.0 : -1.0;
  auto g1 = [&](double x) {
    double a = mu1 - v1.evaluate(x), b = mu2 - v2.evaluate(x);
    if (!std::isfinite(a) || !std::isfinite(b)) return -inf;
    return sgn * (a - alpha * b);
  };
  auto g2 = [&](double x) {
    double a = mu1 - v1.evaluate(x), b = mu2 - v2.evaluate(x);
    if (!std::isfinite(a) || !std::isfinite(b)) return -inf;
    return sgn * (b - alpha * a);
  };
  auto dg1 = [&](double x) {
    return sgn * (alpha * v2.derivative(x, Side::Right) - v1.derivative(x, Side::Right));
  };
  auto dg2 = [&](double x) {
    return sgn * (alpha * v1.derivative(x, Side::Right) - v2.derivative(x, Side::Right));
  };

  auto breaks = v1.smoothness_breaks(window);
  auto b2 = v2.smoothness_breaks(window);
  breaks.insert(breaks.end(), b2.begin(), b2.end());
  std::sort(breaks.begin(), breaks.end());

  ScanOptions o = opt;
  o.f_tol = opt.tol_root * std::max({1.0, std::abs(mu1), std::abs(mu2)});

  IntervalSet filter =
      nonneg_region(g1, dg1, window, o, breaks).intersect(nonneg_region(g2, dg2, window, o, breaks));
  filter = filter.intersect(v1.sublevel_set(mu1, window, opt));
  filter = filter.intersect(v2.sublevel_set(mu2, window, opt));
  return filter;
}

double DensityProfile::rho1(double x) const {
  const auto* piece = find_piece(*this, x);
  if (!piece || !s1.contains(x)) return 0.0;
  switch (piece->kind) {
    case ProfilePiece::Kind::Mixed:
      return amp1 * mixed_density(x, mu1, mu2, alpha, v1, v2).first;
    case ProfilePiece::Kind::Single1:
      return amp1 * single_density(Species::One, x, mu1, v1);
    case ProfilePiece::Kind::Single2:
      return 0.0;
  }
  return 0.0;
}

double DensityProfile::rho2(double x) const {
  const auto* piece = find_piece(*this, x);
  if (!piece || !s2.contains(x)) return 0.0;
  switch (piece->kind) {
    case ProfilePiece::Kind::Mixed:
      return amp2 * mixed_density(x, mu1, mu2, alpha, v1, v2).second;
    case ProfilePiece::Kind::Single2:
      return amp2 * single_density(Species::Two, x, mu2, v2);
    case ProfilePiece::Kind::Single1:
      return 0.0;
  }
  return 0.0;
}

std::pair<double, double> DensityProfile::densities(double x) const { return {rho1(x), rho2(x)}; }

std::pair<double, double> particle_numbers(const DensityProfile& p, int quad_nodes) {
  double n1 = 0, n2 = 0;
  for (const auto& piece : p.pieces) {
    auto splits1 = p.v1.smoothness_breaks(piece.span);
    auto splits2 = p.v2.smoothness_breaks(piece.span);
    splits1.insert(splits1.end(), splits2.begin(), splits2.end());
    std::sort(splits1.begin(), splits1.end());
    switch (piece.kind) {
      case ProfilePiece::Kind::Mixed: {
        n1 += integrate_split(
            [&](double x) { return p.amp1 * mixed_density(x, p.mu1, p.mu2, p.alpha, p.v1, p.v2).first; },
            piece.span, splits1, quad_nodes);
        n2 += integrate_split(
            [&](double x) { return p.amp2 * mixed_density(x, p.mu1, p.mu2, p.alpha, p.v1, p.v2).second; },
            piece.span, splits1, quad_nodes);
        break;
      }
      case ProfilePiece::Kind::Single1:
        n1 += integrate_split([&](double x) { return p.amp1 * (p.mu1 - p.v1.evaluate(x)); },
                              piece.span, splits1, quad_nodes);
        break;
      case ProfilePiece::Kind::Single2:
        n2 += integrate_split([&](double x) { return p.amp2 * (p.mu2 - p.v2.evaluate(x)); },
                              piece.span, splits1, quad_nodes);
        break;
    }
  }
  return {n1, n2};
}

double internal_energy(const DensityProfile& p, int quad_nodes) {
  if (!p.reduced_units())
    throw PreconditionError("internal_energy: profile must be in reduced units");
  double u = 0;
  for (const auto& piece : p.pieces) {
    auto splits = p.v1.smoothness_breaks(piece.span);
    auto s2 = p.v2.smoothness_breaks(piece.span);
    splits.insert(splits.end(), s2.begin(), s2.end());
    std::sort(splits.begin(), splits.end());
    auto integrand = [&](double x) -> double {
      double r1 = 0, r2 = 0;
      switch (piece.kind) {
        case ProfilePiece::Kind::Mixed: {
          auto [a, b] = mixed_density(x, p.mu1, p.mu2, p.alpha, p.v1, p.v2);
          r1 = a;
          r2 = b;
          break;
        }
        case ProfilePiece::Kind::Single1:
          r1 = p.mu1 - p.v1.evaluate(x);
          break;
        case ProfilePiece::Kind::Single2:
          r2 = p.mu2 - p.v2.evaluate(x);
          break;
      }
      double e = 0.5 * (r1 * r1 + r2 * r2) + p.alpha * r1 * r2;
      if (r1 != 0) e += p.v1.evaluate(x) * r1;
      if (r2 != 0) e += p.v2.evaluate(x) * r2;
      return e;
    };
    u += integrate_split(integrand, piece.span, splits, quad_nodes);
  }
  return u;
}

double grand_canonical_energy(const DensityProfile& p, double mu1, double mu2, int quad_nodes) {
  auto [n1, n2] = particle_numbers(p, quad_nodes);
  return internal_energy(p, quad_nodes) - mu1 * n1 - mu2 * n2;
}

DensityProfile profile_from_pieces(double mu1, double mu2, double alpha, const Potential& v1,
                                   const Potential& v2, std::vector<ProfilePiece> pieces,
                                   const std::vector<double>& wall_positions) {
  std::sort(pieces.begin(), pieces.end(),
            [](const ProfilePiece& a, const ProfilePiece& b) { return a.span.lo < b.span.lo; });
  DensityProfile p;
  p.mu1 = mu1;
  p.mu2 = mu2;
  p.alpha = alpha;
  p.v1 = v1;
  p.v2 = v2;
  p.pieces = std::move(pieces);

  double scale = 0;
  for (const auto& piece : p.pieces) scale = std::max(scale, std::abs(piece.span.hi));
  double tol = 1e-11 * std::max(1.0, scale);

  std::vector<Interval> spans1, spans2;
  for (const auto& piece : p.pieces) {
    if (piece.span.length() < 0) throw ValidationError("profile_from_pieces: invalid span");
    if (piece.kind != ProfilePiece::Kind::Single2) spans1.push_back(piece.span);
    if (piece.kind != ProfilePiece::Kind::Single1) spans2.push_back(piece.span);
  }
  p.s1 = build_support(spans1, v1, wall_positions, tol);
  p.s2 = build_support(spans2, v2, wall_positions, tol);
  return p;
}

DensityProfile build_mixed_profile_fixed_mu(double mu1, double mu2, double alpha,
                                            const Potential& v1, const Potential& v2,
                                            Interval window, const ScanOptions& opt) {
  if (alpha >= 1.0)
    throw PreconditionError("build_mixed_profile_fixed_mu: requires alpha < 1");

  // boundary points: zeros of each mixed-density numerator and of each
  // single-species density
  std::vector<double> bounds{window.lo, window.hi};
  auto add_roots = [&](auto&& f, auto&& df, double ftol_scale) {
    ScanOptions o = opt;
    o.f_tol = opt.tol_root * std::max(1.0, ftol_scale);
    auto breaks = v1.smoothness_breaks(window);
    auto b2 = v2.smoothness_breaks(window);
    breaks.insert(breaks.end(), b2.begin(), b2.end());
    std::sort(breaks.begin(), breaks.end());
    for (const auto& r : scan_roots(f, df, window, o, breaks)) bounds.push_back(r.x);
  };
  double mu_scale = std::max(std::abs(mu1), std::abs(mu2));
  if (alpha > 0) {
    add_roots([&](double x) { return (mu1 - v1.evaluate(x)) - alpha * (mu2 - v2.evaluate(x)); },
              [&](double x) {
                return alpha * v2.derivative(x, Side::Right) - v1.derivative(x, Side::Right);
              },
              mu_scale);
    add_roots([&](double x) { return (mu2 - v2.evaluate(x)) - alpha * (mu1 - v1.evaluate(x)); },
              [&](double x) {
                return alpha * v1.derivative(x, Side::Right) - v2.derivative(x, Side::Right);
              },
              mu_scale);
  }
  if (!v1.is_square_well())
    add_roots([&](double x) { return mu1 - v1.evaluate(x); },
              [&](double x) { return -v1.derivative(x, Side::Right); }, std::abs(mu1));
  else if (const auto* sw = v1.as_square_well()) {
    bounds.push_back(sw->a);
    bounds.push_back(sw->b);
  }
  if (!v2.is_square_well())
    add_roots([&](double x) { return mu2 - v2.evaluate(x); },
              [&](double x) { return -v2.derivative(x, Side::Right); }, std::abs(mu2));
  else if (const auto* sw = v2.as_square_well()) {
    bounds.push_back(sw->a);
    bounds.push_back(sw->b);
  }

  // snap bounds onto square-well edges so no piece straddles the infinite
  // step by a root-refinement margin
  std::vector<double> hard_edges;
  for (const Potential* vp : {&v1, &v2}) {
    if (const auto* sw = vp->as_square_well()) {
      hard_edges.push_back(sw->a);
      hard_edges.push_back(sw->b);
    }
  }
  for (double& b : bounds)
    for (double e : hard_edges)
      if (std::abs(b - e) <= 64 * opt.tol_root) b = e;

  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end(),
                           [&](double a, double b) { return std::abs(a - b) < 4 * opt.tol_root; }),
               bounds.end());
  std::erase_if(bounds, [&](double b) { return b < window.lo || b > window.hi; });

  // classify each cell at its midpoint with the exact pointwise rule
  std::vector<ProfilePiece> pieces;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Interval span{bounds[i], bounds[i + 1]};
    double xm = span.mid();
    double t1 = mu1 - v1.evaluate(xm);
    double t2 = mu2 - v2.evaluate(xm);
    bool one = std::isfinite(t1) && t1 > 0;
    bool two = std::isfinite(t2) && t2 > 0;
    if (!one && !two) continue;  // vacuum
    if (one && two) {
      double den = 1.0 - alpha * alpha;
      double r1 = (t1 - alpha * t2) / den;
      double r2 = (t2 - alpha * t1) / den;
      if (r1 > 0 && r2 > 0) {
        pieces.push_back({span, ProfilePiece::Kind::Mixed});
        continue;
      }
    }
    // single-species skirt: the larger density wins (lower -rho^2/2)
    if (one && (!two || t1 >= t2))
      pieces.push_back({span, ProfilePiece::Kind::Single1});
    else
      pieces.push_back({span, ProfilePiece::Kind::Single2});
  }

  // merge adjacent pieces with equal kind
  std::vector<ProfilePiece> merged;
  for (const auto& piece : pieces) {
    if (!merged.empty() && merged.back().kind == piece.kind &&
        std::abs(merged.back().span.hi - piece.span.lo) <= 4 * opt.tol_root) {
      merged.back().span.hi = piece.span.hi;
    } else {
      merged.push_back(piece);
    }
  }
  return profile_from_pieces(mu1, mu2, alpha, v1, v2, std::move(merged));
}

MixedProfileStats mixed_profile_stats(const DensityProfile& p, int quad_nodes) {
  MixedProfileStats st;
  auto [n1, n2] = particle_numbers(p, quad_nodes);
  st.n1 = n1;
  st.n2 = n2;
  for (const auto& piece : p.pieces) {
    switch (piece.kind) {
      case ProfilePiece::Kind::Mixed: st.m12 += piece.span.length(); break;
      case ProfilePiece::Kind::Single1: st.m11 += piece.span.length(); break;
      case ProfilePiece::Kind::Single2: st.m22 += piece.span.length(); break;
    }
  }
  return st;
}

}  // namespace tfps
