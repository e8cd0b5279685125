#include "tfps/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "tfps/errors.hpp"

namespace tfps {

namespace {

GaussLegendre compute_gl(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n with the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.x[n - 1 - i] = x;
    gl.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int n) {
  if (n < 1) throw ValidationError("GaussLegendre: order must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, Interval iv, int nodes) {
  if (iv.length() <= 0) return 0.0;
  const auto& gl = GaussLegendre::get(nodes);
  double c = 0.5 * (iv.lo + iv.hi);
  double half = 0.5 * iv.length();
  double acc = 0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * f(c + half * gl.x[i]);
  return acc * half;
}

double integrate(const std::function<double(double)>& f, const IntervalSet& set, int nodes) {
  double acc = 0;
  for (const auto& p : set.parts()) acc += integrate(f, p, nodes);
  return acc;
}

double integrate_split(const std::function<double(double)>& f, Interval iv,
                       const std::vector<double>& splits, int nodes) {
  std::vector<double> pts;
  pts.push_back(iv.lo);
  for (double s : splits)
    if (s > iv.lo && s < iv.hi) pts.push_back(s);
  pts.push_back(iv.hi);
  std::sort(pts.begin(), pts.end());
  double acc = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    acc += integrate(f, Interval{pts[i], pts[i + 1]}, nodes);
  return acc;
}

}  // namespace tfps
