#pragma once

#include <utility>

namespace tfps {

// Closed-form results for a binary mixture in an infinite square well, in
// reduced units. Exact oracle for the quadrature path and fast path for the
// solver.
namespace squarewell {

struct WellProblem {
  double length = 1.0;  // |S| > 0
  double alpha = 1.0;
  // fixed-N payload
  double n1 = 0, n2 = 0;
  // fixed-mu payload
  double mu1 = 0, mu2 = 0;
};

enum class ThresholdVerdict { MixedFavored, SeparatedFavored, Degenerate };

// (N1^2 + N2^2 + 2 alpha N1 N2) / (2|S|)
double mixed_internal_energy(const WellProblem& w);

struct SeparatedOptimum {
  double energy;        // (N1^2 + N2^2 + 2 N1 N2) / (2|S|)
  double s1_length;     // |S| N1 / (N1 + N2)
  double wall_left;     // c: species 1 on [a, c]
  double wall_right;    // d: species 1 on [d, b]
};
// Optimal separated configuration on the well [a, a+|S|]; the two returned
// walls are the degenerate single-wall realizations.
SeparatedOptimum separated_internal_optimum(const WellProblem& w, double a = 0.0);

ThresholdVerdict threshold_verdict(const WellProblem& w);

// Positivity bounds on alpha for flat mixed profiles at fixed mu:
// physical iff alpha outside (alpha_l, alpha_u).
std::pair<double, double> alpha_bounds(double mu1, double mu2);

// |S| (mu1^2 + mu2^2 - 2 mu1 mu2 alpha) / (2 (alpha^2 - 1)); the regular
// -|S| mu^2/(1+alpha) form when mu1 = mu2.
double mixed_grand_energy(const WellProblem& w);

// -s1 mu1^2/2 - (|S|-s1) mu2^2/2
double separated_grand_energy(const WellProblem& w, double s1_length);

// -|S| max(mu1^2, mu2^2)/2, attained at a single-condensate endpoint
double separated_grand_energy_min(const WellProblem& w);

}  // namespace squarewell
}  // namespace tfps
