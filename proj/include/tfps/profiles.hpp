#pragma once

#include <utility>
#include <vector>

#include "tfps/interval.hpp"
#include "tfps/potential.hpp"
#include "tfps/scaling.hpp"

namespace tfps {

enum class EndpointKind { Wall, Zero, SquareWellEdge };

struct SupportInterval {
  double lo = 0, hi = 0;
  EndpointKind lo_kind = EndpointKind::Zero;
  EndpointKind hi_kind = EndpointKind::Zero;
};

struct Support {
  std::vector<SupportInterval> intervals;

  double measure() const;
  bool empty() const { return intervals.empty(); }
  IntervalSet as_interval_set() const;
  bool contains(double x, double tol = 0.0) const;
};

struct ProfilePiece {
  enum class Kind { Mixed, Single1, Single2 };
  Interval span;
  Kind kind = Kind::Single1;
};

// Piecewise closed-form TF density profile. Densities are stored
// symbolically (mu - V form per piece); sampling happens only at quadrature
// and output time. amp1/amp2 rescale the evaluated densities and exist so a
// reduced-units profile can present raw-units densities; energies and the
// mixed-form algebra require amp = 1.
struct DensityProfile {
  double mu1 = 0, mu2 = 0;
  double alpha = 1.0;
  Potential v1, v2;
  std::vector<ProfilePiece> pieces;  // sorted, non-overlapping spans
  Support s1, s2;
  double amp1 = 1.0, amp2 = 1.0;

  double rho1(double x) const;
  double rho2(double x) const;
  std::pair<double, double> densities(double x) const;
  bool reduced_units() const { return amp1 == 1.0 && amp2 == 1.0; }
};

// rho_k on a mixed interval (unclamped; the caller decides supports).
// Throws DegenerateError at alpha=1.
std::pair<double, double> mixed_density(double x, double mu1, double mu2, double alpha,
                                        const Potential& v1, const Potential& v2);

// mu_k - V_k(x), unclamped.
double single_density(Species k, double x, double mu_k, const Potential& v_k);

// {x : both mixed densities >= 0} cut to the sublevel sets of both species.
IntervalSet mixed_support_filter(double mu1, double mu2, double alpha, const Potential& v1,
                                 const Potential& v2, Interval window,
                                 const ScanOptions& opt = {});

std::pair<double, double> particle_numbers(const DensityProfile& p, int quad_nodes = 32);

// U = 1/2 int (rho1^2 + rho2^2 + 2 alpha rho1 rho2) + int (V1 rho1 + V2 rho2)
double internal_energy(const DensityProfile& p, int quad_nodes = 32);

// E = U - mu1 N1 - mu2 N2 (the N_k = 0 offset convention)
double grand_canonical_energy(const DensityProfile& p, double mu1, double mu2,
                              int quad_nodes = 32);

// Assembles a profile from classified pieces; supports and endpoint kinds are
// derived (walls from the provided list, square-well edges from the
// potentials, zeros otherwise).
DensityProfile profile_from_pieces(double mu1, double mu2, double alpha, const Potential& v1,
                                   const Potential& v2, std::vector<ProfilePiece> pieces,
                                   const std::vector<double>& wall_positions = {});

// Pointwise-minimizing profile at fixed chemical potentials for alpha < 1:
// mixed core plus single-species skirts where positivity fails. Also handles
// the decoupled alpha = 0 case.
DensityProfile build_mixed_profile_fixed_mu(double mu1, double mu2, double alpha,
                                            const Potential& v1, const Potential& v2,
                                            Interval window, const ScanOptions& opt = {});

// Region measures used by the fixed-N Newton solve on (mu1, mu2).
struct MixedProfileStats {
  double n1 = 0, n2 = 0;
  double m12 = 0, m11 = 0, m22 = 0;  // measures of mixed / single-1 / single-2 regions
};
MixedProfileStats mixed_profile_stats(const DensityProfile& p, int quad_nodes = 32);

}  // namespace tfps
