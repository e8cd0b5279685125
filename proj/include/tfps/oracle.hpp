#pragma once

#include <cstdint>
#include <vector>

#include "tfps/profiles.hpp"
#include "tfps/solver_options.hpp"

namespace tfps {
namespace oracle {

struct Grid {
  Interval window;
  int m = 0;  // sample count
  double h = 0;
  std::vector<double> x, v1, v2;

  static Grid make(Interval window, int m, const Potential& p1, const Potential& p2);
};

struct GridDensities {
  std::vector<double> rho1, rho2;
  double energy = 0;  // value of the discretized objective
  int ties = 0;       // grid points with degenerate minimizers
};

// Exact per-point minimization of
//   e = rho1^2/2 + rho2^2/2 + alpha rho1 rho2 + (V1-mu1) rho1 + (V2-mu2) rho2
// over rho >= 0 by KKT candidate enumeration (interior point admissible only
// for alpha < 1). Embarrassingly parallel; `workers` caps the thread count.
GridDensities pointwise_minimize_fixed_mu(const Grid& grid, double mu1, double mu2, double alpha,
                                          int workers = 1);

struct DescentResult {
  GridDensities best;
  double mu1_implied = 0, mu2_implied = 0;
  double mu1_spread = 0, mu2_spread = 0;
  bool converged = false;
  int iterations = 0;
  double final_step = 0;
};

// Projected gradient descent on the trapezoid-discretized internal energy
// with mass equality and nonnegativity, Armijo backtracking, and a scaling
// projection. Runs the structured (left/right) starts plus seeded random
// restarts and keeps the best.
DescentResult projected_descent_fixed_n(const Grid& grid, double n1, double n2, double alpha,
                                        const SolverOptions& opt = {});

// One descent from an explicit starting point (e.g. a sampled analytic
// profile, to probe its local optimality on the grid).
DescentResult projected_descent_seeded(const Grid& grid, std::vector<double> rho1_0,
                                       std::vector<double> rho2_0, double n1, double n2,
                                       double alpha, const SolverOptions& opt = {});

struct Discrepancy {
  double energy_diff = 0;       // same discrete functional on both inputs
  double sup_norm = 0;
  double l2 = 0;
  double support_symmdiff = 0;  // thresholding oracle densities at 1e-8
};

// Compares an analytic profile with oracle densities on the oracle's grid.
Discrepancy compare(const DensityProfile& profile, const Grid& grid, const GridDensities& oracle,
                    bool grand_canonical, double mu1 = 0, double mu2 = 0);

// Discretized energies of arbitrary grid densities (trapezoid weights).
double discrete_internal_energy(const Grid& grid, const std::vector<double>& rho1,
                                const std::vector<double>& rho2, double alpha);
double discrete_grand_energy(const Grid& grid, const std::vector<double>& rho1,
                             const std::vector<double>& rho2, double alpha, double mu1, double mu2);

}  // namespace oracle
}  // namespace tfps
