#include "spikesr/interval_set.hpp"

#include <algorithm>

#include "spikesr/error.hpp"

namespace spikesr {

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  for (const auto& iv : pieces) require(iv.lo <= iv.hi, "interval endpoints out of order");
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : pieces) {
    if (!pieces_.empty() && iv.lo <= pieces_.back().hi)
      pieces_.back().hi = std::max(pieces_.back().hi, iv.hi);
    else
      pieces_.push_back(iv);
  }
}

double IntervalSet::measure() const noexcept {
  double m = 0.0;
  for (const auto& iv : pieces_) m += iv.length();
  return m;
}

bool IntervalSet::contains(double x) const noexcept {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  return it != pieces_.begin() && std::prev(it)->contains(x);
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& iv : pieces_) {
    const double lo = std::max(iv.lo, window.lo);
    const double hi = std::min(iv.hi, window.hi);
    if (lo <= hi) out.push_back({lo, hi});
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement_in(const Interval& window) const {
  const IntervalSet inside = intersect(window);
  if (inside.empty()) return IntervalSet({window});
  std::vector<Interval> out;
  double cursor = window.lo;
  for (const auto& iv : inside.pieces_) {
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < window.hi) out.push_back({cursor, window.hi});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::padded(double pad) const {
  require(pad >= 0.0, "padding must be non-negative");
  std::vector<Interval> out;
  out.reserve(pieces_.size());
  for (const auto& iv : pieces_) out.push_back({iv.lo - pad, iv.hi + pad});
  return IntervalSet(std::move(out));
}

}  // namespace spikesr
