#pragma once

#include <functional>
#include <vector>

#include "tfps/interval.hpp"

namespace tfps {

// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  static const GaussLegendre& get(int n);
};

double integrate(const std::function<double(double)>& f, Interval iv, int nodes = 32);
double integrate(const std::function<double(double)>& f, const IntervalSet& set, int nodes = 32);

// Integrate with the interval split at the given interior points, so the
// integrand is smooth on every quadrature segment.
double integrate_split(const std::function<double(double)>& f, Interval iv,
                       const std::vector<double>& splits, int nodes = 32);

}  // namespace tfps
