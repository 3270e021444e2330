#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "raimi/circle_set.hpp"
#include "raimi/rational.hpp"

namespace raimi {

/// Partition of [0, 1) into r consecutive intervals whose lengths shrink by
/// the exact factor k: E_i = [u_i, u_{i+1}), |E_{i+1}| = |E_i| / k.
struct GeometricPartition {
  int r = 0;
  int t = 0;
  std::int64_t k = 0;
  Rational geometric_sum;          // 1 + 1/k + ... + 1/k^{r-1}
  std::vector<Rational> deltas;    // |E_1|, ..., |E_r|
  std::vector<Rational> anchors;   // u_1 = 0, ..., u_r
  std::vector<CircleSet> parts;    // E_1, ..., E_r

  Rational beta() const { return Rational(1, t); }

  /// Left end of part i (1-based); anchor(r + 1) == 1.
  Rational anchor(int i) const;
  const Rational& delta(int i) const { return deltas.at(static_cast<std::size_t>(i - 1)); }
  const CircleSet& part(int i) const { return parts.at(static_cast<std::size_t>(i - 1)); }

  /// The j-th (1-based) of the k equal pieces of E_s.
  Interval subinterval(int s, std::int64_t j) const;
};

/// 2^{r+4} t + 2: the smallest k strictly above 1 + 2^{r+4} t.
/// Throws InvalidInput for r < 2, t < 2, or when the value overflows.
std::int64_t default_k(int r, int t);

/// Throws InvalidInput if r, t < 2 or k < default_k(r, t).
GeometricPartition build_partition(int r, int t, std::optional<std::int64_t> k = std::nullopt);

}  // namespace raimi
