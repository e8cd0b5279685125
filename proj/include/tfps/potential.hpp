#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tfps/interval.hpp"
#include "tfps/rootscan.hpp"

namespace tfps {

enum class Side { Left, Right };

// One-dimensional confining external potential. Immutable after construction;
// every operation is pure.
class Potential {
 public:
  struct SquareWell {
    double a, b;  // V = 0 on [a,b], +inf outside
  };
  struct Harmonic {
    double k, x0;  // V = k (x-x0)^2
  };
  struct Polynomial {
    std::vector<double> coeffs;  // ascending powers of x
  };
  struct DoubleWell {
    double h, w;  // V = h ((x/w)^2 - 1)^2
  };
  struct PiecewisePolynomial {
    std::vector<double> breakpoints;             // sorted, size m+1
    std::vector<std::vector<double>> segments;   // m segments; coeffs in (x - left breakpoint)
  };
  struct Tabulated {
    std::vector<double> x;       // strictly increasing grid
    std::vector<double> v;
    std::vector<double> slope;   // monotone C1 cubic slopes, filled at construction
  };

  using Family =
      std::variant<SquareWell, Harmonic, Polynomial, DoubleWell, PiecewisePolynomial, Tabulated>;

  Potential() : family_(SquareWell{0.0, 1.0}) {}

  static Potential square_well(double a, double b);
  static Potential harmonic(double k, double x0);
  static Potential polynomial(std::vector<double> coeffs);
  static Potential double_well(double h, double w);
  static Potential piecewise_polynomial(std::vector<double> breakpoints,
                                        std::vector<std::vector<double>> segments);
  static Potential tabulated(std::vector<double> x, std::vector<double> v);

  // V(x); +inf outside a square well.
  double operator()(double x) const { return evaluate(x); }
  double evaluate(double x) const;

  // V'(x). At a piecewise breakpoint where the one-sided slopes differ this
  // throws PreconditionError; use the Side overload there.
  double derivative(double x) const;
  double derivative(double x, Side side) const;

  // All solutions of V(x)=v inside the window, tangential contacts flagged.
  std::vector<LevelRoot> level_set(double v, Interval window, const ScanOptions& opt = {}) const;

  // {x in window : V(x) <= mu} as a union of closed intervals (possibly
  // degenerate single points at tangential touches).
  IntervalSet sublevel_set(double mu, Interval window, const ScanOptions& opt = {}) const;

  // c * V (square wells are invariant: the walls stay infinite)
  Potential scaled(double c) const;

  bool is_square_well() const;
  const SquareWell* as_square_well() const;
  bool is_tabulated() const;

  // interior points where smoothness may break (piecewise breakpoints,
  // tabulated grid nodes, square-well edges), clipped to the window
  std::vector<double> smoothness_breaks(Interval window) const;

  // default bounding interval for numeric searches; user hint wins
  Interval domain_hint() const;
  void set_domain_hint(Interval hint) { hint_ = hint; }

  // hard boundary beyond which the representation is not meaningful
  // (square-well walls, tabulated grid range)
  std::optional<Interval> hard_window() const;

  std::string family_name() const;
  const Family& family() const { return family_; }

  bool operator==(const Potential& other) const;

 private:
  explicit Potential(Family f) : family_(std::move(f)) {}

  Family family_;
  std::optional<Interval> hint_;
};

// phi(x) = V1(x) - V2(x): the wall-placement potential for separated
// configurations.
struct PhiFunction {
  const Potential* v1 = nullptr;
  const Potential* v2 = nullptr;

  double operator()(double x) const { return v1->evaluate(x) - v2->evaluate(x); }
  double slope(double x) const;
  double slope(double x, Side side) const;

  std::vector<LevelRoot> level_set(double f, Interval window, const ScanOptions& opt = {}) const;
  // true if phi is constant over the window at scan resolution
  bool is_flat(Interval window, double* value = nullptr) const;
  // upper bound on level-set root counts: number of monotone pieces
  int monotone_piece_bound(Interval window, const ScanOptions& opt = {}) const;
};

}  // namespace tfps
