#pragma once

#include <algorithm>

namespace stlsmooth {

/// Closed real interval [lo, hi]. Used for approximation-error bounds.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double v, double slack = 0.0) const {
    return v >= lo - slack && v <= hi + slack;
  }
  bool subset_of(const Interval& other, double slack = 0.0) const {
    return lo >= other.lo - slack && hi <= other.hi + slack;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Smallest interval containing both arguments.
inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace stlsmooth
