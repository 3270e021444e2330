#include "raimi/box_set.hpp"

#include <algorithm>
#include <string>

#include "raimi/error.hpp"

namespace raimi {

namespace {

// Coverage flags on a rectilinear grid; cuts[d] always starts at 0 and ends at 1.
struct Grid {
  std::vector<std::vector<Rational>> cuts;
  std::vector<char> covered;

  std::size_t cells(std::size_t d) const { return cuts[d].size() - 1; }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(cuts.size(), 1);
    for (std::size_t d = cuts.size(); d-- > 1;) st[d - 1] = st[d] * cells(d);
    return st;
  }
};

// True if the layers q-1 and q along axis d have identical coverage.
bool layers_equal(const Grid& g, std::size_t d, std::size_t q) {
  const auto st = g.strides();
  const std::size_t outer = d == 0 ? 1 : g.covered.size() / (st[d - 1]);
  const std::size_t inner = st[d];
  const std::size_t block = st[d] * g.cells(d);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t a = o * block + (q - 1) * inner + in;
      if (g.covered[a] != g.covered[a + inner]) return false;
    }
  }
  return true;
}

void drop_layer(Grid& g, std::size_t d, std::size_t q) {
  const auto st = g.strides();
  const std::size_t inner = st[d];
  const std::size_t block = st[d] * g.cells(d);
  const std::size_t outer = g.covered.size() / block;
  std::vector<char> next;
  next.reserve(g.covered.size() - outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t c = 0; c < g.cells(d); ++c) {
      if (c == q) continue;
      const auto first = g.covered.begin() + static_cast<std::ptrdiff_t>(o * block + c * inner);
      next.insert(next.end(), first, first + static_cast<std::ptrdiff_t>(inner));
    }
  }
  g.covered = std::move(next);
  g.cuts[d].erase(g.cuts[d].begin() + static_cast<std::ptrdiff_t>(q));
}

void validate_box(const Box& b, int dim) {
  if (b.dim() != dim) {
    throw InvalidInput("box of dimension " + std::to_string(b.dim()) + " in a set of dimension " +
                       std::to_string(dim));
  }
  for (const auto& side : b.sides) {
    if (side.lo.sign() < 0 || side.hi > Rational(1) || !(side.lo < side.hi)) {
      throw InvalidInput("box side [" + side.lo.str() + ", " + side.hi.str() +
                         ") must satisfy 0 <= lo < hi <= 1");
    }
  }
}

// Splits [lo+shift, hi+shift) at 1 into at most two sides inside [0, 1].
std::vector<Interval> shift_side(const Interval& side, const Rational& shift) {
  Rational lo = side.lo + shift;
  Rational hi = side.hi + shift;
  const Rational one(1);
  if (hi <= one) return {{std::move(lo), std::move(hi)}};
  if (lo >= one) return {{lo - one, hi - one}};
  return {{std::move(lo), one}, {Rational(0), hi - one}};
}

}  // namespace

Rational Box::volume() const {
  Rational v(1);
  for (const auto& s : sides) v *= s.length();
  return v;
}

BoxSet BoxSet::disjointify(std::span<const Box> raw, int dim) {
  if (dim < 1) throw InvalidInput("dimension must be >= 1");
  for (const auto& b : raw) validate_box(b, dim);

  const auto n = static_cast<std::size_t>(dim);
  Grid g;
  g.cuts.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    auto& c = g.cuts[d];
    c.push_back(Rational(0));
    c.push_back(Rational(1));
    for (const auto& b : raw) {
      c.push_back(b.sides[d].lo);
      c.push_back(b.sides[d].hi);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  std::size_t total = 1;
  for (std::size_t d = 0; d < n; ++d) total *= g.cells(d);
  g.covered.assign(total, 0);

  // Mark every cell inside each box; a box spans a contiguous index range per axis.
  const auto st = g.strides();
  for (const auto& b : raw) {
    std::vector<std::size_t> lo(n), hi(n);
    for (std::size_t d = 0; d < n; ++d) {
      const auto& c = g.cuts[d];
      lo[d] = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.sides[d].lo) - c.begin());
      hi[d] = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), b.sides[d].hi) - c.begin());
    }
    std::vector<std::size_t> idx = lo;
    while (true) {
      std::size_t flat = 0;
      for (std::size_t d = 0; d < n; ++d) flat += idx[d] * st[d];
      g.covered[flat] = 1;
      std::size_t d = n;
      while (d-- > 0) {
        if (++idx[d] < hi[d]) break;
        idx[d] = lo[d];
      }
      if (d == static_cast<std::size_t>(-1)) break;
    }
  }

  // Coarsen to the unique minimal grid.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t d = 0; d < n; ++d) {
      for (std::size_t q = g.cells(d) - 1; q >= 1; --q) {
        if (layers_equal(g, d, q)) {
          drop_layer(g, d, q);
          changed = true;
        }
      }
    }
  }

  BoxSet out(dim);
  const auto st2 = g.strides();
  const std::size_t last = n - 1;
  const std::size_t rows = g.covered.size() / g.cells(last);
  for (std::size_t row = 0; row < rows; ++row) {
    // Recover the prefix index for this row.
    std::vector<Interval> prefix;
    std::size_t rem = row * g.cells(last);
    for (std::size_t d = 0; d < last; ++d) {
      const std::size_t i = rem / st2[d];
      rem %= st2[d];
      prefix.push_back({g.cuts[d][i], g.cuts[d][i + 1]});
    }
    const std::size_t base = row * g.cells(last);
    std::size_t c = 0;
    while (c < g.cells(last)) {
      if (!g.covered[base + c]) {
        ++c;
        continue;
      }
      std::size_t e = c;
      while (e < g.cells(last) && g.covered[base + e]) ++e;
      Box box{prefix};
      box.sides.push_back({g.cuts[last][c], g.cuts[last][e]});
      out.boxes_.push_back(std::move(box));
      c = e;
    }
  }
  return out;
}

BoxSet BoxSet::full(int dim) {
  Box b;
  b.sides.assign(static_cast<std::size_t>(dim), Interval{Rational(0), Rational(1)});
  return disjointify(std::span<const Box>(&b, 1), dim);
}

BoxSet BoxSet::from_circle(const CircleSet& s) { return cylinder(s, 1); }

BoxSet BoxSet::cylinder(const CircleSet& base, int dim) {
  std::vector<Box> raw;
  for (const auto& iv : base.intervals()) {
    Box b;
    b.sides.push_back(iv);
    for (int d = 1; d < dim; ++d) b.sides.push_back({Rational(0), Rational(1)});
    raw.push_back(std::move(b));
  }
  return disjointify(raw, dim);
}

Rational BoxSet::measure() const {
  Rational total;
  for (const auto& b : boxes_) total += b.volume();
  return total;
}

bool BoxSet::contains(std::span<const Rational> point) const {
  if (point.size() != static_cast<std::size_t>(dim_)) {
    throw InvalidInput("point dimension mismatch");
  }
  return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
    for (std::size_t d = 0; d < point.size(); ++d) {
      const Rational x = point[d].mod1();
      if (x < b.sides[d].lo || !(x < b.sides[d].hi)) return false;
    }
    return true;
  });
}

BoxSet BoxSet::translated(std::span<const Rational> theta) const {
  if (theta.size() != static_cast<std::size_t>(dim_)) {
    throw InvalidInput("translation dimension mismatch");
  }
  std::vector<Rational> shift;
  for (const auto& x : theta) shift.push_back(x.mod1());

  std::vector<Box> raw;
  for (const auto& b : boxes_) {
    std::vector<Box> partial{Box{}};
    for (std::size_t d = 0; d < b.sides.size(); ++d) {
      const auto pieces = shift_side(b.sides[d], shift[d]);
      std::vector<Box> next;
      for (const auto& pb : partial) {
        for (const auto& piece : pieces) {
          Box nb = pb;
          nb.sides.push_back(piece);
          next.push_back(std::move(nb));
        }
      }
      partial = std::move(next);
    }
    raw.insert(raw.end(), partial.begin(), partial.end());
  }
  return disjointify(raw, dim_);
}

BoxSet BoxSet::intersect(const BoxSet& other) const {
  if (other.dim_ != dim_) throw InvalidInput("intersect: dimension mismatch");
  std::vector<Box> raw;
  for (const auto& a : boxes_) {
    for (const auto& b : other.boxes_) {
      Box c;
      bool nonempty = true;
      for (std::size_t d = 0; d < a.sides.size() && nonempty; ++d) {
        Rational lo = max(a.sides[d].lo, b.sides[d].lo);
        Rational hi = min(a.sides[d].hi, b.sides[d].hi);
        nonempty = lo < hi;
        c.sides.push_back({std::move(lo), std::move(hi)});
      }
      if (nonempty) raw.push_back(std::move(c));
    }
  }
  return disjointify(raw, dim_);
}

BoxSet BoxSet::unite(const BoxSet& other) const {
  if (other.dim_ != dim_) throw InvalidInput("unite: dimension mismatch");
  std::vector<Box> raw = boxes_;
  raw.insert(raw.end(), other.boxes_.begin(), other.boxes_.end());
  return disjointify(raw, dim_);
}

CircleSet BoxSet::to_circle() const {
  if (dim_ != 1) throw InvalidInput("to_circle requires dimension 1");
  std::vector<Interval> ivs;
  for (const auto& b : boxes_) ivs.push_back(b.sides[0]);
  return CircleSet::from_intervals(std::move(ivs));
}

}  // namespace raimi
