#pragma once

#include <vector>

#include "raimi/circle_set.hpp"
#include "raimi/rational.hpp"

namespace raimi {

/// f(theta) = |R_theta(F) ∩ E| for a fixed pair of circle sets.
Rational correlation_value(const CircleSet& e, const CircleSet& f, const Rational& theta);

/// Exact description of theta -> |R_theta(F) ∩ E|.
///
/// `breakpoints` holds every (e - phi) mod 1 for e an endpoint of E and phi
/// an endpoint of F, sorted and deduplicated; `values[k]` is f at
/// `breakpoints[k]`. The function is affine on every arc between cyclically
/// consecutive breakpoints, so `at()` interpolates exactly.
struct CorrelationProfile {
  CircleSet e;
  CircleSet f;
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;

  Rational at(const Rational& theta) const;
};

/// Requires E and F non-empty.
CorrelationProfile build_profile(const CircleSet& e, const CircleSet& f);

/// Cyclic trapezoid sum of the profile. Throws InvariantViolation if it
/// differs from |E|·|F|.
Rational integral(const CircleSet& e, const CircleSet& f);
Rational integral(const CorrelationProfile& profile);

struct ArgMax {
  Rational theta;
  Rational value;
};

/// Smallest breakpoint attaining the global maximum of f.
ArgMax argmax(const CircleSet& e, const CircleSet& f);

/// A theta with 0 < f(theta) < |F|. Breakpoints are tried first in
/// increasing order, then arc midpoints. Requires 0 < |E| < 1 and |F| > 0.
Rational strict_intermediate(const CircleSet& e, const CircleSet& f);

}  // namespace raimi
