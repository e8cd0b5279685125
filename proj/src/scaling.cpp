#include "tfps/scaling.hpp"

#include <cmath>
#include <cstring>
#include <vector>

#include "tfps/errors.hpp"

namespace tfps {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  return fnv1a(h, &bits, sizeof(bits));
}

std::uint64_t hash_potential(std::uint64_t h, const Potential& p) {
  auto name = p.family_name();
  h = fnv1a(h, name.data(), name.size());
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Potential::SquareWell>) {
          h = hash_double(h, f.a);
          h = hash_double(h, f.b);
        } else if constexpr (std::is_same_v<T, Potential::Harmonic>) {
          h = hash_double(h, f.k);
          h = hash_double(h, f.x0);
        } else if constexpr (std::is_same_v<T, Potential::Polynomial>) {
          for (double c : f.coeffs) h = hash_double(h, c);
        } else if constexpr (std::is_same_v<T, Potential::DoubleWell>) {
          h = hash_double(h, f.h);
          h = hash_double(h, f.w);
        } else if constexpr (std::is_same_v<T, Potential::PiecewisePolynomial>) {
          for (double b : f.breakpoints) h = hash_double(h, b);
          for (const auto& s : f.segments)
            for (double c : s) h = hash_double(h, c);
        } else {
          for (double x : f.x) h = hash_double(h, x);
          for (double v : f.v) h = hash_double(h, v);
        }
      },
      p.family());
  return h;
}

// Fit beta in V2 = beta * V1 by sampling; rejects non-proportional pairs.
double fit_beta(const Potential& v1, const Potential& v2) {
  if (v1.is_square_well() && v2.is_square_well()) {
    const auto* a = v1.as_square_well();
    const auto* b = v2.as_square_well();
    if (a->a != b->a || a->b != b->b)
      throw ValidationError("proportional: square wells differ in extent");
    return 1.0;  // both identically zero inside; phi is handled as flat
  }
  Interval w1 = v1.domain_hint();
  Interval w2 = v2.domain_hint();
  Interval w{std::min(w1.lo, w2.lo), std::max(w1.hi, w2.hi)};
  const int samples = 64;
  double beta = 0;
  int used = 0;
  std::vector<std::pair<double, double>> vals;
  double scale2 = 1.0;
  for (int i = 0; i <= samples; ++i) {
    double x = w.lo + w.length() * i / samples;
    double a = v1.evaluate(x);
    double b = v2.evaluate(x);
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    vals.emplace_back(a, b);
    scale2 = std::max(scale2, std::abs(b));
    if (std::abs(a) > 1e-8) {
      beta += b / a;
      ++used;
    }
  }
  if (used == 0) throw ValidationError("proportional: V1 vanishes at all sample points");
  beta /= used;
  if (!(beta > 0)) throw ValidationError("proportional: fitted beta is not positive");
  for (const auto& [a, b] : vals) {
    if (std::abs(b - beta * a) > 1e-8 * scale2)
      throw ValidationError("proportional: potentials are not proportional at declared accuracy");
  }
  return beta;
}

}  // namespace

std::uint64_t raw_params_hash(const RawParams& raw) {
  std::uint64_t h = 14695981039346656037ull;
  h = hash_double(h, raw.u11);
  h = hash_double(h, raw.u22);
  h = hash_double(h, raw.u12);
  int ens = raw.ensemble == EnsembleKind::FixedN ? 0 : 1;
  h = fnv1a(h, &ens, sizeof(ens));
  h = hash_double(h, raw.n1);
  h = hash_double(h, raw.n2);
  h = hash_double(h, raw.mu1);
  h = hash_double(h, raw.mu2);
  h = hash_potential(h, raw.v1);
  h = hash_potential(h, raw.v2);
  return h;
}

ReducedParams to_reduced(const RawParams& raw) {
  if (!(raw.u11 > 0) || !(raw.u22 > 0) || !(raw.u12 > 0))
    throw ValidationError("to_reduced: interaction parameters must be strictly positive");
  if (raw.ensemble == EnsembleKind::FixedN && (raw.n1 < 0 || raw.n2 < 0))
    throw ValidationError("to_reduced: particle numbers must be nonnegative");

  const double s1 = std::sqrt(raw.u11);
  const double s2 = std::sqrt(raw.u22);

  ReducedParams red;
  red.alpha = raw.u12 / std::sqrt(raw.u11 * raw.u22);
  red.ensemble = raw.ensemble;
  red.n1 = raw.n1 * s1;
  red.n2 = raw.n2 * s2;
  red.mu1 = raw.mu1 / s1;
  red.mu2 = raw.mu2 / s2;
  red.v1 = raw.v1.scaled(1.0 / s1);
  red.v2 = raw.v2.scaled(1.0 / s2);
  if (raw.proportional_declared) red.beta = fit_beta(red.v1, red.v2);
  red.provenance = raw_params_hash(raw);
  return red;
}

double raw_density(Species k, double reduced_rho, const RawParams& raw) {
  return reduced_rho / std::sqrt(k == Species::One ? raw.u11 : raw.u22);
}

double raw_chemical_potential(Species k, double reduced_mu, const RawParams& raw) {
  return reduced_mu * std::sqrt(k == Species::One ? raw.u11 : raw.u22);
}

double raw_particle_number(Species k, double reduced_n, const RawParams& raw) {
  return reduced_n / std::sqrt(k == Species::One ? raw.u11 : raw.u22);
}

double reduced_density(Species k, double raw_rho, const RawParams& raw) {
  return raw_rho * std::sqrt(k == Species::One ? raw.u11 : raw.u22);
}

double reduced_chemical_potential(Species k, double raw_mu, const RawParams& raw) {
  return raw_mu / std::sqrt(k == Species::One ? raw.u11 : raw.u22);
}

void check_provenance(const ReducedParams& reduced, const RawParams& raw) {
  if (reduced.provenance != raw_params_hash(raw))
    throw ValidationError("from_reduced: solution was produced from different raw params");
}

}  // namespace tfps
