#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raimi/box_set.hpp"
#include "raimi/circle_set.hpp"
#include "raimi/raimi_circle.hpp"

namespace raimi {

struct TorusCover {
  int dim = 2;
  std::vector<BoxSet> sets;
  std::vector<std::string> names;

  int t() const { return static_cast<int>(sets.size()); }
  const BoxSet& at(int m) const { return sets.at(static_cast<std::size_t>(m - 1)); }

  /// Throws InvalidInput on t < 2, mixed dimensions, or a union short of 1.
  void validate() const;
};

/// x -> |{y : (x, y) ∈ F}|, constant on each [breakpoints[q], breakpoints[q+1])
/// (the last cell ends at 1).
struct SliceProfile {
  std::vector<Rational> breakpoints;
  std::vector<Rational> cell_values;

  Rational at(const Rational& x) const;
  /// Σ value · cell length.
  Rational integral() const;
};

SliceProfile slice_profile(const BoxSet& f);

/// C_1, ..., C_t together with the common refinement used to build them.
struct SelectorPartition {
  std::vector<CircleSet> parts;
  std::vector<Rational> breakpoints;  // common refinement, starts at 0
  std::vector<int> selector;          // chosen m (1-based) per cell
};

/// On each cell of the common refinement, picks the smallest m whose slice
/// measure is at least 1/t. Throws InvalidInput if some cell has none.
SelectorPartition selector_partition(const std::vector<BoxSet>& cover, int t);

struct TorusCertificate {
  RaimiCertificate circle;             // for the cover {C_m}
  int dim = 2;
  int m_star = 0;
  std::vector<Rational> theta;         // (theta_1, 0, ..., 0)
  std::vector<Rational> measures;      // |R_theta(F_{m*}) ∩ (E_i × T^{n-1})|
  std::vector<Rational> transfer_bounds;
  std::vector<Rational> slice_breakpoints;
  std::vector<int> selector;
  bool verified = false;
};

TorusCertificate solve_torus(int r, const TorusCover& cover,
                             std::optional<std::int64_t> k = std::nullopt);

std::string verify_torus_explain(const TorusCertificate& cert, const TorusCover& cover);
bool verify_torus(const TorusCertificate& cert, const TorusCover& cover);

}  // namespace raimi
