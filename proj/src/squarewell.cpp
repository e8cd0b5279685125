#include "tfps/squarewell.hpp"

#include <algorithm>
#include <cmath>

#include "tfps/errors.hpp"

namespace tfps::squarewell {

namespace {

void require_length(const WellProblem& w) {
  if (!(w.length > 0)) throw ValidationError("square well: length must be positive");
}

}  // namespace

double mixed_internal_energy(const WellProblem& w) {
  require_length(w);
  return (w.n1 * w.n1 + w.n2 * w.n2 + 2.0 * w.alpha * w.n1 * w.n2) / (2.0 * w.length);
}

SeparatedOptimum separated_internal_optimum(const WellProblem& w, double a) {
  require_length(w);
  double total = w.n1 + w.n2;
  if (!(total > 0)) throw PreconditionError("separated_internal_optimum: N1 + N2 must be > 0");
  double b = a + w.length;
  SeparatedOptimum opt;
  opt.energy = (w.n1 * w.n1 + w.n2 * w.n2 + 2.0 * w.n1 * w.n2) / (2.0 * w.length);
  opt.s1_length = w.length * w.n1 / total;
  opt.wall_left = (a * w.n2 + b * w.n1) / total;   // species 1 on [a, c]
  opt.wall_right = (a * w.n1 + b * w.n2) / total;  // species 1 on [d, b]
  return opt;
}

ThresholdVerdict threshold_verdict(const WellProblem& w) {
  // U_m - U_s = (alpha - 1) N1 N2 / |S|: the sign of alpha - 1 decides
  if (w.alpha < 1.0) return ThresholdVerdict::MixedFavored;
  if (w.alpha > 1.0) return ThresholdVerdict::SeparatedFavored;
  return ThresholdVerdict::Degenerate;
}

std::pair<double, double> alpha_bounds(double mu1, double mu2) {
  if (!(mu1 > 0) || !(mu2 > 0))
    throw PreconditionError("alpha_bounds: only positive chemical potentials are physical");
  double r = mu1 / mu2;
  return {std::min(r, 1.0 / r), std::max(r, 1.0 / r)};
}

double mixed_grand_energy(const WellProblem& w) {
  require_length(w);
  if (w.mu1 == w.mu2) {
    // never singular along mu1 = mu2
    return -w.length * w.mu1 * w.mu1 / (1.0 + w.alpha);
  }
  if (w.alpha == 1.0)
    throw DegenerateError("mixed_grand_energy: undefined at alpha=1 with mu1 != mu2");
  auto [lo, hi] = alpha_bounds(w.mu1, w.mu2);
  if (w.alpha > lo && w.alpha < hi)
    throw NonphysicalError("mixed_grand_energy: alpha inside the forbidden interval, a density would be negative");
  return w.length * (w.mu1 * w.mu1 + w.mu2 * w.mu2 - 2.0 * w.mu1 * w.mu2 * w.alpha) /
         (2.0 * (w.alpha * w.alpha - 1.0));
}

double separated_grand_energy(const WellProblem& w, double s1_length) {
  require_length(w);
  if (s1_length < 0 || s1_length > w.length)
    throw PreconditionError("separated_grand_energy: 0 <= |S1| <= |S| required");
  return -0.5 * s1_length * w.mu1 * w.mu1 - 0.5 * (w.length - s1_length) * w.mu2 * w.mu2;
}

double separated_grand_energy_min(const WellProblem& w) {
  require_length(w);
  return -0.5 * w.length * std::max(w.mu1 * w.mu1, w.mu2 * w.mu2);
}

}  // namespace tfps::squarewell
