#pragma once

#include <vector>

namespace tfps {

struct Interval {
  double lo = 0;
  double hi = 0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double pad = 0.0) const { return x >= lo - pad && x <= hi + pad; }
  bool valid() const { return hi >= lo; }
};

// Finite union of disjoint closed intervals, kept sorted. Touching or
// overlapping intervals merge on insertion; degenerate [x,x] members are
// allowed (isolated points of sublevel sets).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  void add(Interval iv);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  double measure() const;
  bool contains(double x, double tol = 0.0) const;

  IntervalSet intersect(Interval window) const;
  IntervalSet intersect(const IntervalSet& other) const;

  // total length of the symmetric difference, assuming both sets live on a
  // common bounded window
  double symmetric_difference_measure(const IntervalSet& other) const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace tfps
