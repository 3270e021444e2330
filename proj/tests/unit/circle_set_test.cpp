#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "generators.hpp"
#include "raimi/circle_set.hpp"
#include "raimi/error.hpp"

namespace raimi {
namespace {

using Arcs = std::vector<std::pair<Rational, Rational>>;

CircleSet set(std::initializer_list<std::pair<Rational, Rational>> ivs) {
  std::vector<Interval> out;
  for (const auto& [lo, hi] : ivs) out.push_back({lo, hi});
  return CircleSet::from_intervals(out);
}

const Rational q(long n, long d) { return Rational(n, d); }

TEST(CircleSet, NormalizeExamples) {
  EXPECT_EQ(CircleSet::normalize(Arcs{{q(1, 4), q(1, 2)}}), set({{q(1, 4), q(1, 2)}}));
  EXPECT_EQ(CircleSet::normalize(Arcs{{q(3, 4), q(1, 4)}}),
            set({{Rational(0), q(1, 4)}, {q(3, 4), Rational(1)}}));
  EXPECT_EQ(CircleSet::normalize(Arcs{{Rational(0), q(1, 2)}, {q(1, 2), q(3, 4)}}),
            set({{Rational(0), q(3, 4)}}));
  EXPECT_TRUE(CircleSet::normalize(Arcs{}).empty());
  EXPECT_EQ(CircleSet::normalize(Arcs{{Rational(0), Rational(1)}}), CircleSet::full());
}

TEST(CircleSet, NormalizeRejectsDegenerateArc) {
  EXPECT_THROW(CircleSet::normalize(Arcs{{q(1, 3), q(1, 3)}}), InvalidInput);
  EXPECT_THROW(CircleSet::normalize(Arcs{{q(1, 3), q(4, 3)}}), InvalidInput);
}

TEST(CircleSet, FromIntervalsRejectsOutOfRange) {
  EXPECT_THROW(CircleSet::interval(q(1, 2), q(1, 2)), InvalidInput);
  EXPECT_THROW(CircleSet::interval(q(-1, 2), q(1, 2)), InvalidInput);
  EXPECT_THROW(CircleSet::interval(q(1, 2), q(3, 2)), InvalidInput);
}

TEST(CircleSet, Measure) {
  EXPECT_EQ(CircleSet().measure(), Rational(0));
  EXPECT_EQ(CircleSet::full().measure(), Rational(1));
  EXPECT_EQ(set({{Rational(0), q(1, 4)}, {q(1, 2), q(5, 6)}}).measure(), q(7, 12));
}

TEST(CircleSet, Translate) {
  EXPECT_EQ(set({{q(3, 4), Rational(1)}}).translated(q(1, 2)), set({{q(1, 4), q(1, 2)}}));
  EXPECT_EQ(set({{Rational(0), q(1, 2)}}).translated(q(3, 4)),
            set({{Rational(0), q(1, 4)}, {q(3, 4), Rational(1)}}));
  EXPECT_EQ(set({{Rational(0), q(1, 2)}}).translated(Rational(0)), set({{Rational(0), q(1, 2)}}));
  // Wrapped pieces rejoin across 0.
  EXPECT_EQ(set({{Rational(0), q(1, 4)}, {q(3, 4), Rational(1)}}).translated(q(1, 4)),
            set({{Rational(0), q(1, 2)}}));
}

TEST(CircleSet, IntersectUnionComplement) {
  const auto half = set({{Rational(0), q(1, 2)}});
  EXPECT_EQ(half.intersect(set({{q(1, 4), q(3, 4)}})), set({{q(1, 4), q(1, 2)}}));
  EXPECT_TRUE(half.intersect(set({{q(1, 2), Rational(1)}})).empty());
  const auto two = set({{Rational(0), q(1, 4)}, {q(1, 2), Rational(1)}});
  EXPECT_EQ(two.intersect(CircleSet::full()), two);

  EXPECT_EQ(set({{Rational(0), q(1, 4)}}).unite(set({{q(1, 4), q(1, 2)}})), half);
  EXPECT_EQ(CircleSet().unite(set({{Rational(0), q(1, 3)}})), set({{Rational(0), q(1, 3)}}));
  EXPECT_EQ(half.unite(set({{q(1, 4), q(3, 4)}})), set({{Rational(0), q(3, 4)}}));

  EXPECT_EQ(half.complement(), set({{q(1, 2), Rational(1)}}));
  EXPECT_EQ(CircleSet().complement(), CircleSet::full());
  EXPECT_EQ(set({{q(1, 4), q(1, 2)}, {q(3, 4), Rational(1)}}).complement(),
            set({{Rational(0), q(1, 4)}, {q(1, 2), q(3, 4)}}));
}

TEST(CircleSet, Contains) {
  const auto s = set({{q(1, 4), q(1, 2)}});
  EXPECT_TRUE(s.contains(q(1, 4)));
  EXPECT_FALSE(s.contains(q(1, 2)));
  EXPECT_TRUE(s.contains(q(5, 4)));
}

// Set operations agree with the bitwise operations on a fine lattice.
TEST(CircleSetProperty, MatchesLatticeIndicators) {
  std::mt19937_64 rng(11);
  const long n = testing::common_grid(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_circle_set(rng, 4, 12, true);
    const auto b = testing::random_circle_set(rng, 4, 12, true);
    const auto ia = testing::indicator(a, n);
    const auto ib = testing::indicator(b, n);
    std::vector<char> both(ia.size()), either(ia.size()), notA(ia.size());
    for (std::size_t i = 0; i < ia.size(); ++i) {
      both[i] = ia[i] && ib[i];
      either[i] = ia[i] || ib[i];
      notA[i] = !ia[i];
    }
    EXPECT_EQ(a.intersect(b), testing::from_indicator(both));
    EXPECT_EQ(a.unite(b), testing::from_indicator(either));
    EXPECT_EQ(a.complement(), testing::from_indicator(notA));
  }
}

TEST(CircleSetProperty, AlgebraicLaws) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::random_circle_set(rng, 5, 40, true);
    const auto b = testing::random_circle_set(rng, 5, 40, true);
    const Rational alpha(testing::uniform(rng, 0, 96), 97);
    const Rational beta(testing::uniform(rng, 0, 30), 31);

    EXPECT_EQ(a.unite(b).measure() + a.intersect(b).measure(), a.measure() + b.measure());
    EXPECT_EQ(a.translated(alpha).measure(), a.measure());
    EXPECT_EQ(a.translated(alpha).translated(beta), a.translated((alpha + beta).mod1()));
    EXPECT_EQ(a.translated(alpha).translated((Rational(1) - alpha).mod1()), a);
    EXPECT_EQ(a.unite(b).complement(), a.complement().intersect(b.complement()));
    EXPECT_EQ(a.measure() + a.complement().measure(), Rational(1));

    // Normal form is insensitive to how the input is split and ordered.
    std::vector<std::pair<Rational, Rational>> raw;
    for (const auto& iv : a.intervals()) {
      const Rational mid = (iv.lo + iv.hi) / Rational(2);
      raw.emplace_back(mid, iv.hi);
      raw.emplace_back(iv.lo, mid);
    }
    std::shuffle(raw.begin(), raw.end(), rng);
    EXPECT_EQ(CircleSet::normalize(raw), a);
    EXPECT_EQ(CircleSet::from_intervals(a.intervals()), a);
  }
}

}  // namespace
}  // namespace raimi
