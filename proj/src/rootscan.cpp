#include "tfps/rootscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfps/errors.hpp"

namespace tfps {

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

struct Collector {
  std::vector<LevelRoot> roots;
  double slope_scale = 1.0;
  double slope_rel_tol = 1e-7;
  double f_tol = 1e-12;

  void emit(double x, double dfx) {
    bool tang = std::abs(dfx) <= slope_rel_tol * slope_scale;
    roots.push_back({x, tang});
  }
};

struct CellContext {
  const Real1D* f;
  const Real1D* df;
  const ScanOptions* opt;
  Collector* out;
};

// Recursive analysis of one scan cell. Splits wherever the derivative changes
// sign so that bottom-level pieces are monotone; dips that touch zero within
// f_tol are reported as tangential roots.
void process_cell(const CellContext& cx, double a, double fa, double dfa, double b, double fb,
                  double dfb, int depth) {
  const int sa = std::abs(fa) <= cx.opt->f_tol ? 0 : sign_of(fa);
  const int sb = std::abs(fb) <= cx.opt->f_tol ? 0 : sign_of(fb);
  const bool fchg = sa * sb < 0;
  const bool dchg = std::isfinite(dfa) && std::isfinite(dfb) && sign_of(dfa) * sign_of(dfb) < 0;
  const double width = b - a;

  if (!dchg || width <= cx.opt->tol_root) {
    if (fchg) {
      double r = refine_bracket(*cx.f, a, fa, b, fb, cx.opt->tol_root);
      cx.out->emit(r, (*cx.df)(r));
    }
    return;
  }
  if (depth >= cx.opt->max_depth) {
    double m = 0.5 * (a + b);
    double fm = (*cx.f)(m);
    if (fchg) {
      if (std::abs(fm) > cx.opt->f_tol && sign_of(fm) * sa < 0 && sign_of(fm) * sb < 0)
        throw ResolutionError("scan_roots: multiple roots in one cell at max subdivision depth");
      double r = refine_bracket(*cx.f, a, fa, b, fb, cx.opt->tol_root);
      cx.out->emit(r, (*cx.df)(r));
      return;
    }
    if (std::abs(fm) <= cx.opt->f_tol) cx.out->emit(m, (*cx.df)(m));
    return;
  }

  double m = 0.5 * (a + b);
  double fm = (*cx.f)(m);
  double dfm = (*cx.df)(m);
  if (std::abs(fm) <= cx.opt->f_tol) cx.out->emit(m, dfm);
  process_cell(cx, a, fa, dfa, m, fm, dfm, depth + 1);
  process_cell(cx, m, fm, dfm, b, fb, dfb, depth + 1);
}

}  // namespace

double refine_bracket(const Real1D& f, double a, double fa, double b, double fb, double xtol) {
  if (fa == 0) return a;
  if (fb == 0) return b;
  int stagnation = 0;
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    double x;
    if (std::isfinite(fa) && std::isfinite(fb) && std::abs(fb - fa) > 0 && stagnation < 2) {
      x = b - fb * (b - a) / (fb - fa);  // secant
      double margin = 0.01 * (b - a);
      if (!std::isfinite(x) || x <= a + margin || x >= b - margin) x = 0.5 * (a + b);
    } else {
      x = 0.5 * (a + b);
      stagnation = 0;
    }
    double fx = f(x);
    if (fx == 0) return x;
    double old_width = b - a;
    if (sign_of(fx) == sign_of(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    stagnation = (b - a) > 0.5 * old_width ? stagnation + 1 : 0;
  }
  return 0.5 * (a + b);
}

std::vector<LevelRoot> scan_roots(const Real1D& f, const Real1D& df, Interval window,
                                  const ScanOptions& opt, const std::vector<double>& split_points) {
  if (opt.cells < 2) throw ValidationError("scan_roots: need at least 2 cells");
  if (!(window.hi > window.lo)) return {};

  // scan grid: uniform nodes plus caller-provided split points
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(opt.cells) + split_points.size() + 2);
  double h = window.length() / opt.cells;
  for (int i = 0; i <= opt.cells; ++i) xs.push_back(window.lo + i * h);
  for (double s : split_points)
    if (s > window.lo && s < window.hi) xs.push_back(s);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [&](double p, double q) { return std::abs(p - q) < 1e-3 * h; }),
           xs.end());

  std::vector<double> fs(xs.size()), dfs(xs.size());
  double slope_scale = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fs[i] = f(xs[i]);
    dfs[i] = df(xs[i]);
    if (std::isfinite(dfs[i])) slope_scale = std::max(slope_scale, std::abs(dfs[i]));
  }

  Collector out;
  out.slope_scale = std::max(1.0, slope_scale);
  out.slope_rel_tol = opt.slope_rel_tol;
  out.f_tol = opt.f_tol;

  // grid points that are themselves roots
  int consecutive = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(fs[i]) <= opt.f_tol) {
      out.emit(xs[i], dfs[i]);
      if (++consecutive > 3)
        throw DegenerateError("scan_roots: level set contains an interval (function is flat at the level)");
    } else {
      consecutive = 0;
    }
  }

  CellContext cx{&f, &df, &opt, &out};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!std::isfinite(fs[i]) && !std::isfinite(fs[i + 1])) continue;
    process_cell(cx, xs[i], fs[i], dfs[i], xs[i + 1], fs[i + 1], dfs[i + 1], 0);
  }

  auto& roots = out.roots;
  std::sort(roots.begin(), roots.end(), [](const LevelRoot& p, const LevelRoot& q) { return p.x < q.x; });
  // merge near-duplicates (bracket + grid-point double hits)
  double merge_tol = std::max(4.0 * opt.tol_root, 1e-14 * window.length());
  std::vector<LevelRoot> unique_roots;
  for (const auto& r : roots) {
    if (!unique_roots.empty() && r.x - unique_roots.back().x <= merge_tol) {
      unique_roots.back().tangential = unique_roots.back().tangential || r.tangential;
    } else {
      unique_roots.push_back(r);
    }
  }
  return unique_roots;
}

IntervalSet nonneg_region(const Real1D& f, const Real1D& df, Interval window,
                          const ScanOptions& opt, const std::vector<double>& split_points) {
  IntervalSet region;
  if (!(window.hi > window.lo)) return region;
  try {
    std::vector<double> bounds{window.lo};
    for (const auto& r : scan_roots(f, df, window, opt, split_points)) bounds.push_back(r.x);
    bounds.push_back(window.hi);
    std::sort(bounds.begin(), bounds.end());
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      double fm = f(0.5 * (bounds[i] + bounds[i + 1]));
      if (std::isfinite(fm) && fm >= -opt.f_tol) region.add({bounds[i], bounds[i + 1]});
    }
    return region;
  } catch (const DegenerateError&) {
    // f sits exactly at zero on a stretch; classify by dense sampling
  }
  std::vector<double> xs;
  double h = window.length() / opt.cells;
  for (int i = 0; i <= opt.cells; ++i) xs.push_back(window.lo + i * h);
  for (double s : split_points)
    if (s > window.lo && s < window.hi) xs.push_back(s);
  std::sort(xs.begin(), xs.end());
  int run_start = -1;
  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);
  auto inside = [&](std::size_t i) { return std::isfinite(fs[i]) && fs[i] >= -opt.f_tol; };
  auto boundary = [&](std::size_t in_idx, std::size_t out_idx) -> double {
    if (std::abs(fs[in_idx]) <= opt.f_tol || !std::isfinite(fs[out_idx])) return xs[in_idx];
    double a = std::min(xs[in_idx], xs[out_idx]);
    double b = std::max(xs[in_idx], xs[out_idx]);
    double fa = xs[in_idx] < xs[out_idx] ? fs[in_idx] : fs[out_idx];
    double fb = xs[in_idx] < xs[out_idx] ? fs[out_idx] : fs[in_idx];
    return refine_bracket(f, a, fa, b, fb, opt.tol_root);
  };
  for (std::size_t i = 0; i <= xs.size(); ++i) {
    bool in = i < xs.size() && inside(i);
    if (in && run_start < 0) run_start = static_cast<int>(i);
    if (!in && run_start >= 0) {
      std::size_t first = static_cast<std::size_t>(run_start);
      std::size_t last = i - 1;
      double lo = first == 0 ? xs[0] : boundary(first, first - 1);
      double hi = i == xs.size() ? xs.back() : boundary(last, i);
      region.add({lo, hi});
      run_start = -1;
    }
  }
  return region;
}

}  // namespace tfps
