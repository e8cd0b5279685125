#pragma once

#include <cstdint>
#include <optional>

#include "tfps/potential.hpp"

namespace tfps {

enum class EnsembleKind { FixedN, FixedMu };
enum class Species { One, Two };

inline Species other(Species s) { return s == Species::One ? Species::Two : Species::One; }
inline int species_index(Species s) { return s == Species::One ? 1 : 2; }

struct RawParams {
  double u11 = 1.0, u22 = 1.0, u12 = 1.0;
  EnsembleKind ensemble = EnsembleKind::FixedN;
  double n1 = 0, n2 = 0;    // fixed-N payload
  double mu1 = 0, mu2 = 0;  // fixed-mu payload
  Potential v1;
  Potential v2;
  bool proportional_declared = false;
};

// Canonical form with unit self-couplings. The substitution
//   rho_k -> rho_k / sqrt(U_kk),  N_k -> N_k / sqrt(U_kk),
//   V_k  -> V_k  * sqrt(U_kk),   mu_k -> mu_k * sqrt(U_kk)
// turns the energy functional into the U11=U22=1 form; reading the rules as
// old = (transform of new), the reduced quantities are
//   rho~ = rho * sqrt(U_kk),  N~ = N * sqrt(U_kk),
//   V~   = V / sqrt(U_kk),    mu~ = mu / sqrt(U_kk),
// and the functional value is unchanged.
struct ReducedParams {
  double alpha = 1.0;
  std::optional<double> beta;  // V2 = beta * V1, set when proportionality is declared
  EnsembleKind ensemble = EnsembleKind::FixedN;
  double n1 = 0, n2 = 0;
  double mu1 = 0, mu2 = 0;
  Potential v1;
  Potential v2;
  std::uint64_t provenance = 0;  // hash of the raw params that produced this
};

std::uint64_t raw_params_hash(const RawParams& raw);

ReducedParams to_reduced(const RawParams& raw);

// Pieces of the inverse map, applied to solution data. Wall positions and
// supports are unchanged by the scaling; energies are identical in both unit
// systems.
double raw_density(Species k, double reduced_rho, const RawParams& raw);
double raw_chemical_potential(Species k, double reduced_mu, const RawParams& raw);
double raw_particle_number(Species k, double reduced_n, const RawParams& raw);

// Inverse direction, used to manufacture raw problems from reduced ones.
double reduced_density(Species k, double raw_rho, const RawParams& raw);
double reduced_chemical_potential(Species k, double raw_mu, const RawParams& raw);

// Guards a reduced->raw mapping against params mixups.
void check_provenance(const ReducedParams& reduced, const RawParams& raw);

}  // namespace tfps
