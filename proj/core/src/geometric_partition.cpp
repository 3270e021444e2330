#include "raimi/geometric_partition.hpp"

#include <limits>
#include <string>

#include "raimi/error.hpp"

namespace raimi {

std::int64_t default_k(int r, int t) {
  if (r < 2 || t < 2) {
    throw InvalidInput("r and t must both be >= 2 (got r=" + std::to_string(r) +
                       ", t=" + std::to_string(t) + ")");
  }
  // Loops over k subintervals per step, so anything near 2^62 is hopeless anyway.
  if (r + 4 > 40 || t > (std::int64_t{1} << 20)) {
    throw InvalidInput("r or t too large for an explicit partition");
  }
  return (std::int64_t{1} << (r + 4)) * t + 2;
}

Rational GeometricPartition::anchor(int i) const {
  if (i == r + 1) return Rational(1);
  return anchors.at(static_cast<std::size_t>(i - 1));
}

Interval GeometricPartition::subinterval(int s, std::int64_t j) const {
  const Rational piece = delta(s) / Rational(k);
  const Rational lo = anchor(s) + Rational(j - 1) * piece;
  return {lo, lo + piece};
}

GeometricPartition build_partition(int r, int t, std::optional<std::int64_t> k) {
  const std::int64_t threshold = default_k(r, t);
  const std::int64_t kk = k.value_or(threshold);
  if (kk < threshold) {
    throw InvalidInput("k=" + std::to_string(kk) + " is below the admissible threshold " +
                       std::to_string(threshold) + " for r=" + std::to_string(r) +
                       ", t=" + std::to_string(t));
  }

  GeometricPartition p;
  p.r = r;
  p.t = t;
  p.k = kk;

  const Rational ratio(1, kk);
  Rational term(1);
  for (int i = 0; i < r; ++i) {
    p.geometric_sum += term;
    term *= ratio;
  }

  Rational delta = Rational(1) / p.geometric_sum;
  Rational anchor;
  for (int i = 0; i < r; ++i) {
    p.deltas.push_back(delta);
    p.anchors.push_back(anchor);
    anchor += delta;
    delta *= ratio;
  }
  if (anchor != Rational(1)) {
    throw InvariantViolation("partition lengths sum to " + anchor.str() + ", not 1");
  }
  for (int i = 1; i <= r; ++i) {
    p.parts.push_back(CircleSet::interval(p.anchor(i), p.anchor(i + 1)));
  }

  // 1/k <= beta / 2^{s+5} for every step s <= r - 1; the retention and
  // final estimates depend on it.
  const Rational beta = p.beta();
  for (int s = 1; s <= r - 1; ++s) {
    if (ratio > beta * pow2(-(s + 5))) {
      throw InvariantViolation("1/k exceeds beta/2^" + std::to_string(s + 5));
    }
  }
  return p;
}

}  // namespace raimi
