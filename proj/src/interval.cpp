#include "tfps/interval.hpp"

#include <algorithm>
#include <cmath>

namespace tfps {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const auto& p : parts) add(p);
}

void IntervalSet::add(Interval iv) {
  if (!iv.valid()) return;
  auto it = std::lower_bound(parts_.begin(), parts_.end(), iv,
                             [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  it = parts_.insert(it, iv);
  // merge with left neighbour
  if (it != parts_.begin()) {
    auto prev = std::prev(it);
    if (prev->hi >= it->lo) {
      prev->hi = std::max(prev->hi, it->hi);
      it = parts_.erase(it);
      it = std::prev(it);
    }
  }
  // merge with right neighbours
  auto next = std::next(it);
  while (next != parts_.end() && it->hi >= next->lo) {
    it->hi = std::max(it->hi, next->hi);
    next = parts_.erase(next);
  }
}

double IntervalSet::measure() const {
  double m = 0;
  for (const auto& p : parts_) m += p.length();
  return m;
}

bool IntervalSet::contains(double x, double tol) const {
  for (const auto& p : parts_) {
    if (x >= p.lo - tol && x <= p.hi + tol) return true;
    if (p.lo - tol > x) break;
  }
  return false;
}

IntervalSet IntervalSet::intersect(Interval window) const {
  IntervalSet out;
  for (const auto& p : parts_) {
    double lo = std::max(p.lo, window.lo);
    double hi = std::min(p.hi, window.hi);
    if (lo <= hi) out.add({lo, hi});
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  for (const auto& p : parts_) {
    for (const auto& q : other.parts_) {
      double lo = std::max(p.lo, q.lo);
      double hi = std::min(p.hi, q.hi);
      if (lo <= hi) out.add({lo, hi});
    }
  }
  return out;
}

double IntervalSet::symmetric_difference_measure(const IntervalSet& other) const {
  double inter = intersect(other).measure();
  return measure() + other.measure() - 2.0 * inter;
}

}  // namespace tfps
