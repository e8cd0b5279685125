#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfps/profiles.hpp"
#include "tfps/solver_options.hpp"

namespace tfps {

// Candidate separated-configuration shape: wall count and the species of the
// leftmost populated slot. Labels alternate from there.
struct Topology {
  int n_walls = 0;
  Species leading = Species::One;
  bool maximal_bound = false;  // n equals the level-set bound of phi
};

// A separated configuration: sorted wall positions, alternating species
// slots, chemical potentials (given or solved), and the derived supports.
struct WallConfig {
  std::vector<double> r;
  Species leading = Species::One;
  double mu1 = 0, mu2 = 0;
  double n1 = 0, n2 = 0;
  DensityProfile profile;  // single-species pieces per slot
  bool is_maximal = false;
  bool degenerate_continuum = false;
  bool topology_transition = false;  // walls collided and the pair collapsed
  bool wall_at_breakpoint = false;
  bool touches_window_edge = false;  // support hit the search window boundary
  std::vector<double> residuals;  // stationarity residuals at the walls

  int n_walls() const { return static_cast<int>(r.size()); }
  Species slot_species(int slot) const { return slot % 2 == 0 ? leading : other(leading); }
  // +1 if wall j is the upper border of a species-1 interval
  int label(int j) const { return slot_species(j) == Species::One ? +1 : -1; }
  const Support& s1() const { return profile.s1; }
  const Support& s2() const { return profile.s2; }
};

// Wall-count bound and candidate skeleton list. For flat phi (identical
// potentials) the level equation is degenerate; the bound collapses to 1 and
// the selection principle favors the fewest walls.
std::vector<Topology> enumerate_topologies(const Potential& v1, const Potential& v2, int max_walls,
                                           Interval window, const SolverOptions& opt = {});

// rho1(R_j) - rho2(R_j) = (mu1 - mu2) - phi(R_j), zero at stationarity.
std::vector<double> stationarity_residual(const WallConfig& cfg);

// Common wall potential level for proportional potentials: (mu1-mu2)/(1-beta).
double proportional_wall_level(double mu1, double mu2, double beta);

struct FixedMuResult {
  std::vector<WallConfig> configs;
  bool degenerate_continuum = false;
  int tangential_roots_excluded = 0;
  std::vector<std::string> skipped;
};
// Walls sit at the transversal solutions of phi = mu1 - mu2; returns every
// realization of the skeleton on those roots. Densities are mu-determined and
// independent of the wall positions.
FixedMuResult solve_fixed_mu(const Topology& topo, double mu1, double mu2, const Potential& v1,
                             const Potential& v2, Interval window, const SolverOptions& opt = {});

struct FixedNResult {
  std::vector<WallConfig> configs;
  std::vector<std::string> diagnostics;
};
// Coupled solve: per-species normalization fixes mu_k given the walls (inner,
// monotone), damped Newton drives the stationarity residuals to zero (outer).
FixedNResult solve_fixed_n(const Topology& topo, double n1, double n2, const Potential& v1,
                           const Potential& v2, Interval window, const SolverOptions& opt = {});

// Directed solve from an explicit starting guess; used by the stability CLI
// command and by tests that construct specific non-maximal configurations.
std::optional<WallConfig> solve_fixed_n_from(const Topology& topo, std::vector<double> r0,
                                             double n1, double n2, const Potential& v1,
                                             const Potential& v2, Interval window,
                                             const SolverOptions& opt, std::string* error = nullptr);

// Chemical potential normalizing a single species over the given slots:
// N(mu) = sum_slots int (mu - V)_+ = target.
double normalize_species(const Potential& vk, const std::vector<Interval>& slots, double target,
                         const SolverOptions& opt = {});

// Support/profile assembly for given walls and chemical potentials. Fails
// when a wall-adjacent density is negative or a slot cannot host its species.
struct SupportBuild {
  DensityProfile profile;
  bool feasible = false;
  bool touches_window_edge = false;
  std::string reason;
};
SupportBuild build_separated_profile(const std::vector<double>& r, Species leading, double mu1,
                                     double mu2, const Potential& v1, const Potential& v2,
                                     Interval window, const SolverOptions& opt = {});

// Internal energy of a fixed-N separated configuration as a function of wall
// positions (chemical potentials re-solved); drives derivative checks.
double internal_energy_at_walls(const Topology& topo, const std::vector<double>& r, double n1,
                                double n2, const Potential& v1, const Potential& v2,
                                Interval window, const SolverOptions& opt = {});

}  // namespace tfps
