#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "tfps/potential.hpp"

namespace tfps::test {

inline std::mt19937_64 rng(std::uint64_t seed = 42) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// central finite difference, step tuned for double precision
inline double fd_derivative(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// random confining polynomial: even positive leading term plus lower-order noise
inline Potential random_confining_polynomial(std::mt19937_64& g, int max_half_degree = 3) {
  int half = std::uniform_int_distribution<int>(1, max_half_degree)(g);
  int degree = 2 * half;
  std::vector<double> c(degree + 1, 0.0);
  for (int i = 0; i < degree; ++i) c[i] = uniform(g, -1.0, 1.0);
  c[degree] = uniform(g, 0.5, 2.0);
  return Potential::polynomial(std::move(c));
}

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace tfps::test
