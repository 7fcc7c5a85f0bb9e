#pragma once

#include <vector>

namespace spikesr {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint closed intervals, kept sorted. Touching or
/// overlapping pieces are merged on construction.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const noexcept { return pieces_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  bool empty() const noexcept { return pieces_.empty(); }

  double measure() const noexcept;
  bool contains(double x) const noexcept;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const Interval& window) const;
  /// Closure of window \ *this.
  IntervalSet complement_in(const Interval& window) const;
  /// Every piece widened by pad on both sides.
  IntervalSet padded(double pad) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

}  // namespace spikesr
