#include "raimi/torus.hpp"

#include <algorithm>

#include "raimi/error.hpp"

namespace raimi {

namespace {

Box tail_of(const Box& b) {
  return Box{std::vector<Interval>(b.sides.begin() + 1, b.sides.end())};
}

// Index of the cell [bps[q], bps[q+1]) containing x in [0, 1).
std::size_t cell_of(const std::vector<Rational>& bps, const Rational& x) {
  auto it = std::upper_bound(bps.begin(), bps.end(), x);
  return static_cast<std::size_t>(it - bps.begin()) - 1;
}

Rational cell_end(const std::vector<Rational>& bps, std::size_t q) {
  return q + 1 < bps.size() ? bps[q + 1] : Rational(1);
}

}  // namespace

void TorusCover::validate() const {
  if (sets.size() < 2) {
    throw InvalidInput("a cover needs at least t = 2 sets, got " + std::to_string(sets.size()));
  }
  BoxSet all(dim);
  for (const auto& s : sets) {
    if (s.dim() != dim) throw InvalidInput("cover member has the wrong dimension");
    all = all.unite(s);
  }
  if (all.measure() != Rational(1)) {
    throw InvalidInput("sets do not cover the torus; uncovered measure " +
                       (Rational(1) - all.measure()).str());
  }
}

Rational SliceProfile::at(const Rational& x) const {
  return cell_values[cell_of(breakpoints, x.mod1())];
}

Rational SliceProfile::integral() const {
  Rational total;
  for (std::size_t q = 0; q < breakpoints.size(); ++q) {
    total += cell_values[q] * (cell_end(breakpoints, q) - breakpoints[q]);
  }
  return total;
}

SliceProfile slice_profile(const BoxSet& f) {
  if (f.dim() < 2) throw InvalidInput("slice_profile needs dimension >= 2; use the circle path");
  SliceProfile p;
  p.breakpoints.push_back(Rational(0));
  for (const auto& b : f.boxes()) {
    p.breakpoints.push_back(b.sides[0].lo);
    if (b.sides[0].hi < Rational(1)) p.breakpoints.push_back(b.sides[0].hi);
  }
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  p.breakpoints.erase(std::unique(p.breakpoints.begin(), p.breakpoints.end()),
                      p.breakpoints.end());

  for (std::size_t q = 0; q < p.breakpoints.size(); ++q) {
    const Rational& lo = p.breakpoints[q];
    const Rational hi = cell_end(p.breakpoints, q);
    std::vector<Box> active;
    for (const auto& b : f.boxes()) {
      if (b.sides[0].lo <= lo && hi <= b.sides[0].hi) active.push_back(tail_of(b));
    }
    p.cell_values.push_back(BoxSet::disjointify(active, f.dim() - 1).measure());
  }
  return p;
}

SelectorPartition selector_partition(const std::vector<BoxSet>& cover, int t) {
  if (t != static_cast<int>(cover.size())) throw InvalidInput("selector: t != cover size");
  std::vector<SliceProfile> profiles;
  SelectorPartition out;
  for (const auto& f : cover) {
    profiles.push_back(slice_profile(f));
    const auto& b = profiles.back().breakpoints;
    out.breakpoints.insert(out.breakpoints.end(), b.begin(), b.end());
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());

  const Rational threshold(1, t);
  std::vector<std::vector<Interval>> cells(static_cast<std::size_t>(t));
  for (std::size_t q = 0; q < out.breakpoints.size(); ++q) {
    const Rational& x = out.breakpoints[q];
    int chosen = 0;
    for (int m = 1; m <= t && chosen == 0; ++m) {
      if (profiles[static_cast<std::size_t>(m - 1)].at(x) >= threshold) chosen = m;
    }
    if (chosen == 0) {
      throw InvalidInput("cover violation at x in [" + x.str() + ", " +
                         cell_end(out.breakpoints, q).str() + ")");
    }
    out.selector.push_back(chosen);
    cells[static_cast<std::size_t>(chosen - 1)].push_back({x, cell_end(out.breakpoints, q)});
  }
  for (auto& c : cells) out.parts.push_back(CircleSet::from_intervals(std::move(c)));
  return out;
}

TorusCertificate solve_torus(int r, const TorusCover& cover, std::optional<std::int64_t> k) {
  if (cover.dim < 2) {
    throw InvalidInput("solve_torus needs dimension >= 2; route dimension 1 to the circle solver");
  }
  cover.validate();
  const int t = cover.t();
  const SelectorPartition sel = selector_partition(cover.sets, t);

  CircleCover reduced;
  reduced.sets = sel.parts;
  TorusCertificate cert;
  cert.circle = solve(r, reduced, k);
  cert.dim = cover.dim;
  cert.m_star = cert.circle.m;
  cert.theta.assign(static_cast<std::size_t>(cover.dim), Rational(0));
  cert.theta[0] = cert.circle.theta;
  cert.slice_breakpoints = sel.breakpoints;
  cert.selector = sel.selector;

  const BoxSet moved = cover.at(cert.m_star).translated(cert.theta);
  const Rational inv_t(1, t);
  cert.verified = cert.circle.verified;
  for (int i = 1; i <= r; ++i) {
    const BoxSet slab = BoxSet::cylinder(cert.circle.partition.part(i), cover.dim);
    cert.measures.push_back(moved.intersect(slab).measure());
    cert.transfer_bounds.push_back(inv_t * cert.circle.measures[static_cast<std::size_t>(i - 1)]);
    const auto& m = cert.measures.back();
    const auto& b = cert.transfer_bounds.back();
    if (m < b) {
      throw InvariantViolation("transfer inequality fails for E_" + std::to_string(i) + ": " +
                               m.str() + " < " + b.str());
    }
    if (b.sign() <= 0) cert.verified = false;
  }
  return cert;
}

std::string verify_torus_explain(const TorusCertificate& cert, const TorusCover& cover) {
  if (cert.dim != cover.dim) throw InvalidInput("certificate and cover dimensions differ");
  if (cert.circle.partition.t != cover.t()) {
    throw InvalidInput("certificate t differs from cover size");
  }
  cover.validate();
  const SelectorPartition sel = selector_partition(cover.sets, cover.t());
  if (sel.breakpoints != cert.slice_breakpoints) return "slice breakpoints differ";
  if (sel.selector != cert.selector) return "selector differs";

  CircleCover reduced;
  reduced.sets = sel.parts;
  if (auto why = verify_explain(cert.circle, reduced); !why.empty()) return "circle: " + why;

  if (cert.m_star != cert.circle.m) return "m_star differs from circle m";
  std::vector<Rational> theta(static_cast<std::size_t>(cover.dim), Rational(0));
  theta[0] = cert.circle.theta;
  if (cert.theta != theta) return "theta is not (theta_1, 0, ..., 0)";

  const int r = cert.circle.partition.r;
  if (cert.measures.size() != static_cast<std::size_t>(r) ||
      cert.transfer_bounds.size() != static_cast<std::size_t>(r)) {
    return "measure count != r";
  }
  const BoxSet moved = cover.at(cert.m_star).translated(theta);
  const Rational inv_t(1, cover.t());
  for (int i = 1; i <= r; ++i) {
    const auto ui = static_cast<std::size_t>(i - 1);
    const BoxSet slab = BoxSet::cylinder(cert.circle.partition.part(i), cover.dim);
    const Rational measure = moved.intersect(slab).measure();
    const Rational bound = inv_t * cert.circle.measures[ui];
    if (measure != cert.measures[ui]) return "stored measure differs for E_" + std::to_string(i);
    if (bound != cert.transfer_bounds[ui]) return "transfer bound differs for E_" + std::to_string(i);
    if (!(bound.sign() > 0 && measure >= bound)) {
      return "transfer inequality fails for E_" + std::to_string(i);
    }
  }
  if (!cert.verified) return "certificate is flagged unverified";
  return {};
}

bool verify_torus(const TorusCertificate& cert, const TorusCover& cover) {
  return verify_torus_explain(cert, cover).empty();
}

}  // namespace raimi
