#include "raimi/correlation.hpp"

#include <algorithm>

#include "raimi/error.hpp"

namespace raimi {

namespace {

// Midpoint of the arc that starts at breakpoints[k] (cyclic).
Rational arc_midpoint(const std::vector<Rational>& bps, std::size_t k) {
  const Rational next = k + 1 < bps.size() ? bps[k + 1] : bps.front() + Rational(1);
  return ((bps[k] + next) / Rational(2)).mod1();
}

}  // namespace

Rational correlation_value(const CircleSet& e, const CircleSet& f, const Rational& theta) {
  return f.translated(theta).intersect(e).measure();
}

Rational CorrelationProfile::at(const Rational& theta) const {
  const Rational x = theta.mod1();
  if (breakpoints.empty()) return Rational(0);
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  // Arc [left, right) with right possibly wrapping past 1.
  std::size_t left;
  Rational lx = x;
  if (it == breakpoints.begin()) {
    left = breakpoints.size() - 1;
    lx += Rational(1);
  } else {
    left = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  }
  const std::size_t right = (left + 1) % breakpoints.size();
  const Rational a = breakpoints[left];
  const Rational b = right > left ? breakpoints[right] : breakpoints[right] + Rational(1);
  if (lx == a) return values[left];
  return values[left] + (values[right] - values[left]) * (lx - a) / (b - a);
}

CorrelationProfile build_profile(const CircleSet& e, const CircleSet& f) {
  if (e.empty() || f.empty()) {
    throw InvalidInput("correlation profile requires non-empty E and F");
  }
  CorrelationProfile p{e, f, {}, {}};

  // f'' is a sum of unit jumps: for E arc [a,b) and F arc [c,d), the slope
  // drops by one at a-c and b-d and rises by one at b-c and a-d.
  std::vector<std::pair<Rational, long>> jumps;
  jumps.reserve(4 * e.size() * f.size());
  for (const auto& ei : e.intervals()) {
    for (const auto& fi : f.intervals()) {
      jumps.emplace_back((ei.lo - fi.lo).mod1(), -1);
      jumps.emplace_back((ei.hi - fi.hi).mod1(), -1);
      jumps.emplace_back((ei.hi - fi.lo).mod1(), 1);
      jumps.emplace_back((ei.lo - fi.hi).mod1(), 1);
    }
  }
  std::sort(jumps.begin(), jumps.end());
  std::vector<long> slope_change;
  for (const auto& [x, d] : jumps) {
    if (p.breakpoints.empty() || p.breakpoints.back() != x) {
      p.breakpoints.push_back(x);
      slope_change.push_back(0);
    }
    slope_change.back() += d;
  }

  // Right-hand slope at the first breakpoint: F-arc ends entering E minus
  // F-arc starts entering E.
  const Rational& start = p.breakpoints.front();
  long slope = 0;
  for (const auto& fi : f.intervals()) {
    if (e.contains((fi.hi + start).mod1())) ++slope;
    if (e.contains((fi.lo + start).mod1())) --slope;
  }

  const std::size_t n = p.breakpoints.size();
  p.values.reserve(n);
  p.values.push_back(correlation_value(e, f, start));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    p.values.push_back(p.values[k] + Rational(slope) * (p.breakpoints[k + 1] - p.breakpoints[k]));
    slope += slope_change[k + 1];
  }
  const Rational closing =
      p.values.back() + Rational(slope) * (start + Rational(1) - p.breakpoints.back());
  if (closing != p.values.front()) {
    throw InvariantViolation("profile sweep does not close: " + closing.str() + " vs " +
                             p.values.front().str());
  }
  return p;
}

Rational integral(const CorrelationProfile& p) {
  Rational sum;
  const std::size_t n = p.breakpoints.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t next = (k + 1) % n;
    const Rational width = next > k ? p.breakpoints[next] - p.breakpoints[k]
                                    : p.breakpoints[next] + Rational(1) - p.breakpoints[k];
    sum += width * (p.values[k] + p.values[next]) / Rational(2);
  }
  const Rational expected = p.e.measure() * p.f.measure();
  if (sum != expected) {
    throw InvariantViolation("trapezoid integral " + sum.str() + " != |E||F| = " + expected.str());
  }
  return sum;
}

Rational integral(const CircleSet& e, const CircleSet& f) {
  if (e.empty() || f.empty()) return Rational(0);
  return integral(build_profile(e, f));
}

ArgMax argmax(const CircleSet& e, const CircleSet& f) {
  const CorrelationProfile p = build_profile(e, f);
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.values.size(); ++k) {
    if (p.values[best] < p.values[k]) best = k;
  }
  ArgMax out{p.breakpoints[best], p.values[best]};
  const Rational mean = e.measure() * f.measure();
  if (out.value < mean) {
    throw InvariantViolation("profile maximum " + out.value.str() + " below mean " + mean.str());
  }
  return out;
}

Rational strict_intermediate(const CircleSet& e, const CircleSet& f) {
  const Rational me = e.measure();
  const Rational mf = f.measure();
  if (me.sign() <= 0 || me >= Rational(1)) {
    throw InvalidInput("strict_intermediate requires 0 < |E| < 1, got " + me.str());
  }
  if (mf.sign() <= 0) throw InvalidInput("strict_intermediate requires |F| > 0");

  const CorrelationProfile p = build_profile(e, f);
  auto strict = [&](const Rational& v) { return v.sign() > 0 && v < mf; };
  for (std::size_t k = 0; k < p.breakpoints.size(); ++k) {
    if (strict(p.values[k])) return p.breakpoints[k];
  }
  for (std::size_t k = 0; k < p.breakpoints.size(); ++k) {
    const Rational mid = arc_midpoint(p.breakpoints, k);
    if (strict(correlation_value(e, f, mid))) return mid;
  }
  throw InvariantViolation("no theta with 0 < f(theta) < |F| among breakpoints and midpoints");
}

}  // namespace raimi
