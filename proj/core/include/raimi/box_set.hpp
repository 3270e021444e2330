#pragma once

#include <span>
#include <vector>

#include "raimi/circle_set.hpp"
#include "raimi/rational.hpp"

namespace raimi {

/// Axis-aligned half-open box in T^n, one Interval per coordinate.
struct Box {
  std::vector<Interval> sides;

  int dim() const { return static_cast<int>(sides.size()); }
  Rational volume() const;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Finite union of boxes in T^n, held as a canonical slab decomposition.
///
/// Normal form: the coarsest axis-aligned grid on which the set is a union
/// of cells (every remaining cut is one where membership actually changes),
/// with covered cells merged along the last coordinate and listed in
/// lexicographic order of their lower corner. It depends only on the set,
/// so `==` is set equality.
class BoxSet {
 public:
  explicit BoxSet(int dim = 1) : dim_(dim) {}

  /// Throws InvalidInput on dimension mismatch or a side with lo >= hi or
  /// outside [0, 1].
  static BoxSet disjointify(std::span<const Box> raw, int dim);

  static BoxSet full(int dim);
  static BoxSet from_circle(const CircleSet& s);
  /// C × T^{n-1}.
  static BoxSet cylinder(const CircleSet& base, int dim);

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }

  Rational measure() const;
  bool contains(std::span<const Rational> point) const;

  /// Componentwise x -> x + theta (mod 1).
  BoxSet translated(std::span<const Rational> theta) const;
  BoxSet intersect(const BoxSet& other) const;
  BoxSet unite(const BoxSet& other) const;

  /// Only for dim() == 1.
  CircleSet to_circle() const;

  friend bool operator==(const BoxSet&, const BoxSet&) = default;

 private:
  int dim_;
  std::vector<Box> boxes_;
};

}  // namespace raimi
