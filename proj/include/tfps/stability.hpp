#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfps/linalg.hpp"
#include "tfps/solver_options.hpp"
#include "tfps/walls.hpp"

namespace tfps {

enum class ThermoVerdict { Pass, Fail, Marginal };

struct NecessaryReport {
  bool applicable = false;  // proportional fixed-N Hessian form only
  bool pass = true;
  int nonpositive_count = 0;
  std::string failed_condition;
};

struct HessianReport {
  Matrix h;
  std::vector<double> a;  // intensive diagonal a_j (proportional potentials)
  double c = 0;           // (1/|S1| + 1/|S2|) rho~^2 coupling, fixed N
  bool positive_definite = true;
  std::vector<ThermoVerdict> per_wall;
  ThermoVerdict thermo_overall = ThermoVerdict::Pass;
  NecessaryReport necessary;
  double min_eigenvalue = 0;  // NaN for n = 0
  bool used_one_sided_derivative = false;
};

// H_jj = s_j rho(R_j) phi'(R_j) + (1/|S1|+1/|S2|) rho(R_j)^2 and
// H_jk = s_j s_k (1/|S1|+1/|S2|) rho(R_j) rho(R_k) at fixed N; fixed mu keeps
// only the intensive diagonal term. rho is the wall density (both species
// agree there at stationarity; the mean is used and agreement asserted).
HessianReport assemble_hessian(const WallConfig& cfg, EnsembleKind ensemble,
                               std::optional<double> beta, const SolverOptions& opt = {});

// Leading-principal-minor test via LDL^T with pivots > 1e-12 max|H|.
bool positive_definite(const Matrix& h, double pivot_tol_factor = 1e-12);

// Large-|S_k| limit: wall j passes iff s_j phi'(R_j) > 0; phi' = 0 is marginal.
std::vector<ThermoVerdict> thermo_limit_verdict(const WallConfig& cfg,
                                                const SolverOptions& opt = {});

// Necessary conditions for diag(a) + (-1)^{j+k} C to be positive definite:
// at most one a_j <= 0, |a_j*| <= min of the others, and the determinant
// bound |a_j*| < C / (1 + C sum_{j != j*} 1/a_j).
NecessaryReport necessary_conditions(const std::vector<double>& a, double c);

struct ExclusionFinding {
  std::string rule;  // nonmax1, nonmax2, nonmax1_mu, nonmax2_mu, zero_border, not_applicable
  bool triggered = false;
  double lhs = 0, rhs = 0;
  double extremum = 0;  // the V-bar value that was tested
  std::string detail;
};

// Ground-state exclusion tests for proportional potentials with beta < 1.
// v is the common wall potential level; V-bar extrema are scanned over the
// supports (interior stationary points plus endpoints).
std::vector<ExclusionFinding> nonmax_exclusion_fixed_n(const WallConfig& cfg, double beta,
                                                       const SolverOptions& opt = {});
std::vector<ExclusionFinding> nonmax_exclusion_fixed_mu(const WallConfig& cfg, double beta,
                                                        const SolverOptions& opt = {});

struct SplitTestResult {
  double exact_delta = 0;   // quadrature energy change of the flat separated swap
  double first_order = 0;   // eps (1 - alpha) <rho1> <rho2>
};

// Replaces the mixed densities on [x0, x0+eps] by the mass-preserving flat
// separated pair with |w2|/|w1| = n2/n1 and returns the exact energy change.
SplitTestResult local_split_test(const DensityProfile& profile, double x0, double epsilon,
                                 const SolverOptions& opt = {});

// Same computation on prescribed C1 densities (works at alpha = 1, where the
// mixed closed form does not exist).
SplitTestResult local_split_test_densities(const Real1D& rho1, const Real1D& rho2, double alpha,
                                           const Potential& v1, const Potential& v2, double x0,
                                           double epsilon, const SolverOptions& opt = {});

}  // namespace tfps
