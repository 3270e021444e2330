#include "raimi/circle_set.hpp"

#include <algorithm>

#include "raimi/error.hpp"

namespace raimi {

namespace {

const Rational kZero{0};
const Rational kOne{1};

}  // namespace

std::vector<Interval> CircleSet::merge(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

CircleSet CircleSet::normalize(std::span<const std::pair<Rational, Rational>> arcs) {
  std::vector<Interval> raw;
  raw.reserve(arcs.size() + 1);
  for (const auto& [a, b] : arcs) {
    if (a == b) {
      throw InvalidInput("degenerate arc [" + a.str() + ", " + b.str() + ")");
    }
    Rational lo = a.mod1();
    Rational hi = b.mod1();
    if (hi == kZero) hi = kOne;
    if (lo < hi) {
      raw.push_back({std::move(lo), std::move(hi)});
    } else if (hi < lo) {
      raw.push_back({std::move(lo), kOne});
      raw.push_back({kZero, std::move(hi)});
    } else {
      throw InvalidInput("degenerate arc [" + a.str() + ", " + b.str() + ") after reduction mod 1");
    }
  }
  return CircleSet(merge(std::move(raw)));
}

CircleSet CircleSet::from_intervals(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (iv.lo < kZero || iv.hi > kOne || !(iv.lo < iv.hi)) {
      throw InvalidInput("interval [" + iv.lo.str() + ", " + iv.hi.str() +
                         ") is not a non-empty subinterval of [0, 1)");
    }
  }
  return CircleSet(merge(std::move(intervals)));
}

CircleSet CircleSet::full() { return CircleSet({{kZero, kOne}}); }

CircleSet CircleSet::interval(Rational lo, Rational hi) {
  return from_intervals({{std::move(lo), std::move(hi)}});
}

Rational CircleSet::measure() const {
  Rational total;
  for (const auto& iv : intervals_) total += iv.length();
  return total;
}

bool CircleSet::contains(const Rational& x) const {
  const Rational y = x.mod1();
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), y,
                             [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return false;
  --it;
  return y < it->hi;
}

CircleSet CircleSet::translated(const Rational& theta) const {
  const Rational shift = theta.mod1();
  if (shift == kZero) return *this;
  std::vector<Interval> raw;
  raw.reserve(intervals_.size() + 1);
  for (const auto& iv : intervals_) {
    Rational lo = iv.lo + shift;
    Rational hi = iv.hi + shift;
    if (hi <= kOne) {
      raw.push_back({std::move(lo), std::move(hi)});
    } else if (lo >= kOne) {
      raw.push_back({lo - kOne, hi - kOne});
    } else {
      raw.push_back({std::move(lo), kOne});
      raw.push_back({kZero, hi - kOne});
    }
  }
  return CircleSet(merge(std::move(raw)));
}

CircleSet CircleSet::intersect(const CircleSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& a = intervals_;
  const auto& b = other.intervals_;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = max(a[i].lo, b[j].lo);
    const Rational& hi = min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces of a normal form intersected with a normal form never touch.
  return CircleSet(std::move(out));
}

CircleSet CircleSet::unite(const CircleSet& other) const {
  std::vector<Interval> raw = intervals_;
  raw.insert(raw.end(), other.intervals_.begin(), other.intervals_.end());
  return CircleSet(merge(std::move(raw)));
}

CircleSet CircleSet::complement() const {
  std::vector<Interval> out;
  Rational cursor = kZero;
  for (const auto& iv : intervals_) {
    if (cursor < iv.lo) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < kOne) out.push_back({cursor, kOne});
  return CircleSet(std::move(out));
}

}  // namespace raimi
