#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "raimi/circle_set.hpp"
#include "raimi/geometric_partition.hpp"
#include "raimi/rational.hpp"

namespace raimi {

/// Finite cover F_1, ..., F_t of the circle. Members may overlap and may be
/// empty; only the union is constrained.
struct CircleCover {
  std::vector<CircleSet> sets;
  std::vector<std::string> names;  // optional, parallel to `sets`

  int t() const { return static_cast<int>(sets.size()); }
  /// 1-based access.
  const CircleSet& at(int m) const { return sets.at(static_cast<std::size_t>(m - 1)); }

  /// Throws InvalidInput naming the uncovered region if the union is not
  /// the whole circle, or if t < 2.
  void validate() const;
};

/// One pass of the refinement: E_s is cut into k pieces J_1..J_k of length
/// |E_{s+1}|, and the rightmost piece whose mass reaches `threshold` is
/// moved onto E_{s+1}.
struct StepRecord {
  int s = 0;
  std::vector<Rational> masses;  // |R_{phi_s}(F_m) ∩ J_i|, may be omitted in I/O
  Rational threshold;            // beta / 2^{s+3} * |E_{s+1}|
  std::int64_t chosen_j = 0;     // 1-based
  Rational c_j;                  // left end of J_j
  Rational theta_next;           // u_{s+1} - c_j
};

struct RotationTrace {
  int m = 0;  // 1-based
  Rational beta;
  std::vector<Rational> thetas;  // theta_1 .. theta_r
  std::vector<Rational> phis;    // partial sums mod 1
  std::vector<StepRecord> steps; // s = 1 .. r-1
};

struct RaimiCertificate {
  GeometricPartition partition;
  int m = 0;
  Rational theta;                  // phi_r
  std::vector<Rational> measures;  // |R_theta(F_m) ∩ E_i|, i = 1..r
  std::vector<Rational> bounds;    // guaranteed lower bounds per part
  RotationTrace trace;
  bool verified = false;
};

/// Smallest index of maximal measure and beta = 1/t.
std::pair<int, Rational> select_m(const CircleCover& cover);

/// Smallest maximizer of theta -> |R_theta(F_m) ∩ E_1|. The value is at
/// least |E_1|·|F_m|, hence at least beta·|E_1| once |F_m| >= beta.
Rational initial_rotation(const GeometricPartition& partition, const CircleSet& fm);

/// Performs step s (1 <= s <= r-1) from accumulated rotation phi_s and
/// returns theta_{s+1} together with the step record.
std::pair<Rational, StepRecord> refine_step(const GeometricPartition& partition,
                                            const CircleSet& fm, int s, const Rational& phi_s);

/// Lower bounds the construction guarantees: beta/2^{s+5}·Δ_s for s < r
/// and beta/2^{r+2}·Δ_r for the last part.
std::vector<Rational> certificate_bounds(const GeometricPartition& partition);

RaimiCertificate solve(int r, const CircleCover& cover,
                       std::optional<std::int64_t> k = std::nullopt);

/// Recomputes the certificate from the cover alone and checks every stored
/// quantity. Throws InvalidInput on a structural mismatch between the two.
bool verify(const RaimiCertificate& cert, const CircleCover& cover);

/// Like verify, but returns the first failed check (empty when it passes).
std::string verify_explain(const RaimiCertificate& cert, const CircleCover& cover);

}  // namespace raimi
