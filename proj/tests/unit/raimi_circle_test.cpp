#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "generators.hpp"
#include "raimi/correlation.hpp"
#include "raimi/error.hpp"
#include "raimi/raimi_circle.hpp"

namespace raimi {
namespace {

CircleSet iv(long a, long b, long d) { return CircleSet::interval(Rational(a, d), Rational(b, d)); }

CircleCover halves() { return CircleCover{{iv(0, 1, 2), iv(1, 2, 2)}, {}}; }

TEST(SelectM, Examples) {
  auto [m, beta] = select_m(CircleCover{{iv(0, 1, 3), CircleSet::full()}, {}});
  EXPECT_EQ(m, 2);
  EXPECT_EQ(beta, Rational(1, 2));
  std::tie(m, beta) = select_m(halves());
  EXPECT_EQ(m, 1);
  std::tie(m, beta) = select_m(CircleCover{{iv(0, 1, 4), iv(1, 2, 4), iv(2, 4, 4)}, {}});
  EXPECT_EQ(m, 3);
  EXPECT_EQ(beta, Rational(1, 3));
}

TEST(SelectM, RejectsNonCover) {
  try {
    select_m(CircleCover{{iv(0, 1, 2), iv(1, 3, 4)}, {}});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("[3/4,1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(select_m(CircleCover{{CircleSet::full()}, {}}), InvalidInput);
}

TEST(InitialRotation, Examples) {
  const auto p = build_partition(2, 2);
  EXPECT_EQ(initial_rotation(p, iv(0, 1, 2)), Rational(0));
  EXPECT_EQ(correlation_value(p.part(1), iv(0, 1, 2), Rational(0)), Rational(1, 2));

  const auto p3 = build_partition(3, 4);
  EXPECT_EQ(initial_rotation(p3, CircleSet::full()), Rational(0));
  EXPECT_EQ(correlation_value(p3.part(1), CircleSet::full(), Rational(0)), p3.delta(1));

  const auto tail = iv(130, 131, 131);
  const Rational th = initial_rotation(p, tail);
  EXPECT_EQ(th, Rational(1, 131));
  EXPECT_EQ(correlation_value(p.part(1), tail, th), Rational(1, 131));
}

TEST(RefineStep, WorkedInstance) {
  const auto p = build_partition(2, 2);
  const auto [theta2, rec] = refine_step(p, iv(0, 1, 2), 1, Rational(0));
  ASSERT_EQ(rec.masses.size(), 130u);
  for (std::size_t i = 0; i < 65; ++i) EXPECT_EQ(rec.masses[i], p.delta(2)) << i;
  EXPECT_EQ(rec.masses[65], p.delta(2) / Rational(2));
  for (std::size_t i = 66; i < 130; ++i) EXPECT_EQ(rec.masses[i], Rational(0)) << i;
  EXPECT_EQ(rec.threshold, p.delta(2) / Rational(32));
  EXPECT_EQ(rec.chosen_j, 66);
  EXPECT_EQ(rec.c_j, Rational(65, 131));
  EXPECT_EQ(theta2, Rational(65, 131));

  const CircleSet moved = iv(0, 1, 2).translated(theta2);
  EXPECT_EQ(moved.intersect(p.part(2)), CircleSet::interval(Rational(130, 131), Rational(261, 262)));
  EXPECT_GE(moved.intersect(p.part(2)).measure(), p.beta() * pow2(-4) * p.delta(2));
}

TEST(RefineStep, FullCoverageChoosesLastPiece) {
  const auto p = build_partition(3, 2);
  for (int s = 1; s <= 2; ++s) {
    const auto [theta, rec] = refine_step(p, CircleSet::full(), s, Rational(0));
    EXPECT_EQ(rec.chosen_j, p.k);
    EXPECT_EQ(theta, p.delta(s + 1));
  }
}

TEST(RefineStep, RejectsBrokenLoopInvariant) {
  const auto p = build_partition(2, 2);
  // Nothing of F sits on E_1 after this shift.
  EXPECT_THROW(refine_step(p, iv(130, 131, 131), 1, Rational(0)), InvariantViolation);
  EXPECT_THROW(refine_step(p, iv(0, 1, 2), 2, Rational(0)), InvalidInput);
}

TEST(Solve, WorkedInstance) {
  const auto cert = solve(2, halves());
  EXPECT_EQ(cert.m, 1);
  EXPECT_EQ(cert.theta, Rational(65, 131));
  EXPECT_EQ(cert.measures, (std::vector<Rational>{Rational(65, 131), Rational(1, 262)}));
  EXPECT_EQ(cert.bounds, (std::vector<Rational>{cert.partition.delta(1) / Rational(128),
                                                cert.partition.delta(2) / Rational(32)}));
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.trace.thetas, (std::vector<Rational>{Rational(0), Rational(65, 131)}));

  // Independent recount on the 1/262 lattice.
  for (int i = 1; i <= 2; ++i) {
    EXPECT_EQ(testing::brute_correlation(cert.partition.part(i), iv(0, 1, 2), 130, 262),
              cert.measures[static_cast<std::size_t>(i - 1)]);
  }
}

TEST(Solve, FullCircleMember) {
  const auto cert = solve(2, CircleCover{{CircleSet::full(), CircleSet()}, {}});
  EXPECT_EQ(cert.m, 1);
  EXPECT_EQ(cert.measures, cert.partition.deltas);
  EXPECT_TRUE(cert.verified);
}

TEST(Solve, RejectsBadParameters) {
  EXPECT_THROW(solve(1, halves()), InvalidInput);
  EXPECT_THROW(solve(2, halves(), 100), InvalidInput);
  EXPECT_THROW(solve(2, CircleCover{{iv(0, 1, 2), iv(1, 3, 4)}, {}}), InvalidInput);
}

TEST(Verify, AcceptsAndRejects) {
  const auto cover = halves();
  const auto cert = solve(2, cover);
  EXPECT_EQ(verify_explain(cert, cover), "");

  auto moved = cert;
  moved.theta = Rational(0);
  EXPECT_FALSE(verify(moved, cover));
  // Unrotated, F_1 misses E_2 entirely.
  EXPECT_EQ(correlation_value(cert.partition.part(2), cover.at(1), moved.theta), Rational(0));

  auto inflated = cert;
  inflated.bounds[0] = Rational(1);
  EXPECT_FALSE(verify(inflated, cover));

  auto wrong_j = cert;
  wrong_j.trace.steps[0].chosen_j = 65;
  EXPECT_FALSE(verify(wrong_j, cover));

  auto wrong_measure = cert;
  wrong_measure.measures[1] = Rational(1, 131);
  EXPECT_FALSE(verify(wrong_measure, cover));

  const CircleCover three{{iv(0, 1, 2), iv(1, 2, 2), CircleSet()}, {}};
  EXPECT_THROW(verify(cert, three), InvalidInput);
}

TEST(SolveProperty, RandomCoversCertify) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int t = static_cast<int>(testing::uniform(rng, 2, 3));
    const int r = static_cast<int>(testing::uniform(rng, 2, 3));
    const auto cover = testing::random_circle_cover(rng, t, 4, 16);
    const auto cert = solve(r, cover);
    ASSERT_TRUE(cert.verified);
    EXPECT_TRUE(verify(cert, cover));
    const Rational beta = cert.partition.beta();
    for (int s = 1; s < r; ++s) {
      // Retention after step s: E_s keeps beta/2^{s+4} of its length.
      const Rational kept =
          correlation_value(cert.partition.part(s), cover.at(cert.m),
                            cert.trace.phis[static_cast<std::size_t>(s)]);
      EXPECT_GE(kept, beta * pow2(-(s + 4)) * cert.partition.delta(s));
      const auto& th = cert.trace.thetas[static_cast<std::size_t>(s)];
      EXPECT_GT(th.sign(), 0);
      EXPECT_LE(th, cert.partition.delta(s));
    }
    // Determinism.
    const auto again = solve(r, cover);
    EXPECT_EQ(again.theta, cert.theta);
    EXPECT_EQ(again.measures, cert.measures);
  }
}

}  // namespace
}  // namespace raimi
