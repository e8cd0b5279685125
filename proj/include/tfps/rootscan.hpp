#pragma once

#include <functional>
#include <vector>

#include "tfps/interval.hpp"

namespace tfps {

using Real1D = std::function<double(double)>;

struct ScanOptions {
  int cells = 4096;         // uniform scan resolution per window
  double tol_root = 1e-12;  // absolute tolerance on x
  double f_tol = 1e-12;     // |f| at which a point counts as a root (caller scales)
  int max_depth = 30;       // recursive subdivision of suspicious cells
  double slope_rel_tol = 1e-7;  // |f'| below this (relative to slope scale) flags tangency
};

struct LevelRoot {
  double x = 0;
  bool tangential = false;  // f' ~ 0 at the root
};

// All solutions of f(x)=0 in `window`, sorted ascending. `df` is the analytic
// derivative; it drives tangency classification and the subdivision of cells
// where f dips without a sign change. `split_points` are merged into the scan
// grid (potential breakpoints, walls), so each cell sees one-sided smoothness.
std::vector<LevelRoot> scan_roots(const Real1D& f, const Real1D& df, Interval window,
                                  const ScanOptions& opt = {},
                                  const std::vector<double>& split_points = {});

// Bracketed secant/bisection hybrid. Requires f(a)*f(b) < 0; converges to
// |b-a| <= xtol.
double refine_bracket(const Real1D& f, double a, double fa, double b, double fb, double xtol);

// {x in window : f(x) >= 0} as an interval union with refined endpoints.
// Unlike scan_roots this tolerates f being identically zero on stretches
// (exactly saturated constraints); non-finite values count as "outside".
IntervalSet nonneg_region(const Real1D& f, const Real1D& df, Interval window,
                          const ScanOptions& opt = {}, const std::vector<double>& split_points = {});

}  // namespace tfps
