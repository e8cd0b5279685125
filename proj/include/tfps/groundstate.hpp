#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfps/oracle.hpp"
#include "tfps/scaling.hpp"
#include "tfps/solver_options.hpp"
#include "tfps/stability.hpp"
#include "tfps/walls.hpp"

namespace tfps {

enum class Regime { MixedFavored, SeparatedFavored, Degenerate };

// alpha = 1 separates mixing from demixing regardless of the potentials.
Regime classify_regime(double alpha);

// A problem in reduced units (unit self-couplings).
struct Problem {
  double alpha = 1.0;
  std::optional<double> beta;  // set when the potentials are proportional
  EnsembleKind ensemble = EnsembleKind::FixedN;
  double n1 = 0, n2 = 0;
  double mu1 = 0, mu2 = 0;
  Potential v1, v2;
  std::optional<Interval> window_override;
  std::uint64_t provenance = 0;

  static Problem from_reduced(const ReducedParams& red);
};

struct Candidate {
  enum class Kind { Mixed, Separated };
  Kind kind = Kind::Separated;
  DensityProfile profile;
  std::optional<WallConfig> walls;
  std::optional<HessianReport> stability;
  std::vector<ExclusionFinding> exclusions;
  double energy = 0;  // ranking energy: internal (fixed N) or grand (fixed mu)
  double internal_energy = 0;
  double grand_energy = 0;
  double n1 = 0, n2 = 0, mu1 = 0, mu2 = 0;
  bool stable = true;
  bool excluded = false;
  std::vector<std::string> flags;
};

struct OracleComparison {
  std::string kind;  // pointwise | projected_descent
  double oracle_energy = 0;
  double energy_diff = 0;
  double sup_norm = 0, l2 = 0, support_symmdiff = 0;
  int grid_m = 0;
  bool agrees = true;
};

struct SolveReport {
  Regime regime = Regime::Degenerate;
  double alpha = 1.0;
  std::optional<double> beta;
  EnsembleKind ensemble = EnsembleKind::FixedN;
  Interval window;
  std::vector<Candidate> candidates;
  std::vector<int> ground_state;  // indices into candidates; degenerate sets listed together
  double ground_energy = 0;
  bool empty_ground_state = false;
  bool degenerate_continuum = false;
  std::optional<OracleComparison> oracle;
  std::vector<std::string> warnings;
  std::vector<std::string> skipped;
};

// Bounding window for all numeric searches: the domain hints, grown until
// both potentials clear the relevant chemical-potential scale at the edges
// (respecting hard boundaries such as square-well walls).
Interval resolve_window(const Problem& p, const SolverOptions& opt = {});

SolveReport solve_ground_state(const Problem& p, const SolverOptions& opt = {});

struct SweepRow {
  double alpha = 0;
  std::optional<double> e_mixed;
  std::optional<double> e_separated;
  std::string verdict;  // mixed | separated | degenerate | undetermined
  bool forbidden = false;
  std::string note;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<double> crossings;
};

// Mixed and best-separated energies across an alpha grid; the separated side
// does not depend on alpha and is computed once.
SweepResult sweep_alpha(const Problem& p, const std::vector<double>& alphas,
                        const SolverOptions& opt = {});

// Fixed-N mixed construction: 2-D Newton on (mu1, mu2) over the pointwise
// profile map; the TF algebra fixes the profile shape, the normalization
// fixes the chemical potentials.
DensityProfile solve_mixed_fixed_n(double n1, double n2, double alpha, const Potential& v1,
                                   const Potential& v2, Interval window,
                                   const SolverOptions& opt = {});

}  // namespace tfps
