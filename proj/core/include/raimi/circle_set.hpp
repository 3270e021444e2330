#pragma once

#include <span>
#include <utility>
#include <vector>

#include "raimi/rational.hpp"

namespace raimi {

/// Half-open interval [lo, hi) of the unit interval.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of half-open rational intervals on the circle R/Z,
/// identified with [0, 1).
///
/// Always held in normal form: intervals sorted by `lo`, pairwise disjoint,
/// with a strict gap between neighbours, and 0 <= lo < hi <= 1. The normal
/// form is unique, so `==` is set equality.
class CircleSet {
 public:
  CircleSet() = default;

  /// Builds a set from raw arcs. An arc (a, b) runs forward from a to b
  /// mod 1; when a > b after reduction it wraps and is split at 1. The end
  /// point b is reduced into (0, 1], so (0, 1) is the full circle.
  /// Throws InvalidInput when a == b.
  static CircleSet normalize(std::span<const std::pair<Rational, Rational>> arcs);

  /// Accepts intervals with 0 <= lo < hi <= 1 in any order, overlapping or
  /// not, and merges them into normal form. Throws InvalidInput otherwise.
  static CircleSet from_intervals(std::vector<Interval> intervals);

  static CircleSet full();
  static CircleSet interval(Rational lo, Rational hi);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  Rational measure() const;
  bool contains(const Rational& x) const;

  /// Image under x -> x + theta (mod 1).
  CircleSet translated(const Rational& theta) const;
  CircleSet intersect(const CircleSet& other) const;
  CircleSet unite(const CircleSet& other) const;
  CircleSet complement() const;

  friend bool operator==(const CircleSet&, const CircleSet&) = default;

 private:
  explicit CircleSet(std::vector<Interval> normal) : intervals_(std::move(normal)) {}
  static std::vector<Interval> merge(std::vector<Interval> raw);

  std::vector<Interval> intervals_;
};

}  // namespace raimi
