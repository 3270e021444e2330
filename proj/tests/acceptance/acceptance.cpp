// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "raimi/correlation.hpp"
#include "raimi/error.hpp"
#include "raimi/geometric_partition.hpp"
#include "raimi/oracle.hpp"
#include "raimi/raimi_circle.hpp"
#include "raimi/torus.hpp"

namespace {

using namespace raimi;
using testing::uniform;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct CircleRun {
  CircleCover cover;
  RaimiCertificate cert;
};
struct TorusRun {
  TorusCover cover;
  TorusCertificate cert;
};

std::vector<CircleRun> g_circle;  // criteria 4 and 5
std::vector<TorusRun> g_torus;    // criterion 6
std::size_t g_ac4_count = 0;

Outcome mean_value() {
  Outcome o;
  std::mt19937_64 rng(1001);
  for (int n = 0; n < 200; ++n) {
    const auto e = testing::random_circle_set(rng, 6, 64);
    const auto f = testing::random_circle_set(rng, 6, 64);
    const auto p = build_profile(e, f);
    if (integral(p) != e.measure() * f.measure()) o.fail("pair " + std::to_string(n));
  }
  o.detail = o.ok ? "200 pairs" : o.detail;
  return o;
}

Outcome strict_intermediate_witness() {
  Outcome o;
  std::mt19937_64 rng(1002);
  for (int n = 0; n < 200; ++n) {
    const auto e = testing::random_proper_circle_set(rng, 6, 64);
    const auto f = testing::random_circle_set(rng, 6, 64);
    const Rational theta = strict_intermediate(e, f);
    const Rational v = correlation_value(e, f, theta);
    if (!(Rational(0) < v && v < f.measure())) o.fail("pair " + std::to_string(n) + " theta " + theta.str());
  }
  if (o.ok) o.detail = "200 pairs";
  return o;
}

Outcome partition_exactness() {
  Outcome o;
  int cases = 0;
  for (int r = 2; r <= 4; ++r) {
    for (int t = 2; t <= 4; ++t) {
      const std::int64_t k0 = default_k(r, t);
      for (std::int64_t k : {k0, k0 + 7}) {
        const auto p = build_partition(r, t, k);
        Rational sum;
        CircleSet tiled;
        Rational lo;
        for (int i = 1; i <= r; ++i) {
          sum += p.delta(i);
          const auto& iv = p.part(i).intervals();
          if (iv.size() != 1 || iv[0].lo != lo || iv[0].hi != lo + p.delta(i)) {
            o.fail("r=" + std::to_string(r) + " t=" + std::to_string(t) + " part " + std::to_string(i));
          }
          if (!tiled.intersect(p.part(i)).empty()) o.fail("overlap in r=" + std::to_string(r));
          tiled = tiled.unite(p.part(i));
          lo += p.delta(i);
        }
        if (sum != Rational(1) || tiled != CircleSet::full()) {
          o.fail("sum or tiling, r=" + std::to_string(r) + " t=" + std::to_string(t));
        }
        ++cases;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " (r,t,k) cases";
  return o;
}

void check_circle_bounds(const CircleCover& cover, const RaimiCertificate& cert, Outcome& o,
                         const std::string& tag) {
  const auto& p = cert.partition;
  const Rational beta = cover.at(cert.m).measure();
  if (!cert.verified) o.fail(tag + ": not verified");
  if (beta < Rational(1, cover.t())) o.fail(tag + ": beta below 1/t");
  if (cert.measures.size() != static_cast<std::size_t>(p.r)) {
    o.fail(tag + ": wrong measure count");
    return;
  }
  for (int s = 1; s <= p.r; ++s) {
    const Rational actual = correlation_value(p.part(s), cover.at(cert.m), cert.theta);
    const Rational bound = s < p.r ? beta / pow2(s + 5) * p.delta(s) : beta / pow2(p.r + 2) * p.delta(p.r);
    const auto& stored = cert.measures[static_cast<std::size_t>(s - 1)];
    if (stored != actual) o.fail(tag + ": stored measure " + std::to_string(s) + " differs");
    if (!(actual >= bound && bound > Rational(0))) o.fail(tag + ": bound fails at s=" + std::to_string(s));
  }
}

Outcome circle_certificates() {
  Outcome o;
  std::mt19937_64 rng(1004);
  for (int n = 0; n < 100; ++n) {
    const int t = n % 2 == 0 ? 2 : 3;
    const int r = (n / 2) % 2 == 0 ? 2 : 3;
    auto cover = testing::random_circle_cover(rng, t, 4, 32);
    auto cert = solve(r, cover);
    check_circle_bounds(cover, cert, o, "cover " + std::to_string(n));
    g_circle.push_back({std::move(cover), std::move(cert)});
  }
  g_ac4_count = g_circle.size();
  if (o.ok) o.detail = "100 covers, r in {2,3}, t in {2,3}";
  return o;
}

Outcome worked_instance() {
  Outcome o;
  CircleCover cover{{CircleSet::interval(Rational(0), Rational(1, 2)),
                     CircleSet::interval(Rational(1, 2), Rational(1))},
                    {}};
  auto cert = solve(2, cover);
  if (cert.m != 1) o.fail("m = " + std::to_string(cert.m));
  if (cert.theta != Rational(65, 131)) o.fail("theta = " + cert.theta.str());
  if (cert.measures != std::vector<Rational>{Rational(65, 131), Rational(1, 262)}) o.fail("measures");
  const auto rep = oracle::cross_validate(cert, cover);
  if (!rep.agreement) o.fail("oracle disagrees: " + rep.note);
  check_circle_bounds(cover, cert, o, "worked");
  g_circle.push_back({std::move(cover), std::move(cert)});
  if (o.ok) o.detail = "m=1 theta=65/131 measures (65/131, 1/262)";
  return o;
}

Outcome torus_certificates() {
  Outcome o;
  std::mt19937_64 rng(1006);
  for (int n = 0; n < 50; ++n) {
    const int dim = n % 2 == 0 ? 2 : 3;
    const int t = (n / 2) % 2 == 0 ? 2 : 3;
    const int r = (n / 4) % 2 == 0 ? 2 : 3;
    auto cover = testing::random_torus_cover(rng, dim, t, 4, 8);
    auto cert = solve_torus(r, cover);
    const std::string tag = "cover " + std::to_string(n);
    if (!cert.verified) o.fail(tag + ": not verified");

    const auto parts = selector_partition(cover.sets, t).parts;
    const auto& c_star = parts[static_cast<std::size_t>(cert.m_star - 1)];
    const auto& f_star = cover.at(cert.m_star);
    const auto& p = cert.circle.partition;
    for (int i = 1; i <= r; ++i) {
      const auto slab = BoxSet::cylinder(p.part(i), dim);
      const Rational torus = f_star.translated(cert.theta).intersect(slab).measure();
      const Rational transfer = correlation_value(p.part(i), c_star, cert.theta[0]) / Rational(t);
      if (torus != cert.measures[static_cast<std::size_t>(i - 1)]) o.fail(tag + ": stored measure");
      if (!(torus >= transfer && transfer > Rational(0))) {
        o.fail(tag + ": transfer inequality at i=" + std::to_string(i));
      }
    }
    g_torus.push_back({std::move(cover), std::move(cert)});
  }
  if (o.ok) o.detail = "50 covers, n in {2,3}, r in {2,3}";
  return o;
}

Outcome fubini() {
  Outcome o;
  std::mt19937_64 rng(1007);
  for (int n = 0; n < 100; ++n) {
    const int dim = static_cast<int>(uniform(rng, 2, 4));
    const auto s = BoxSet::disjointify(testing::random_boxes(rng, dim, 5, 12), dim);
    const auto prof = slice_profile(s);
    Rational sum;
    for (std::size_t q = 0; q < prof.breakpoints.size(); ++q) {
      const Rational end = q + 1 < prof.breakpoints.size() ? prof.breakpoints[q + 1] : Rational(1);
      sum += prof.cell_values[q] * (end - prof.breakpoints[q]);
    }
    if (sum != s.measure()) o.fail("set " + std::to_string(n));
  }
  if (o.ok) o.detail = "100 box sets";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t witness = 0;
  for (std::size_t n = 0; n < g_circle.size(); ++n) {
    const auto& run = g_circle[n];
    const auto rep = oracle::cross_validate(run.cert, run.cover);
    if (!rep.agreement) o.fail("circle cert " + std::to_string(n) + ": " + rep.note);
    if (n < g_ac4_count) {
      const auto w = oracle::exhaustive_witness(run.cert.partition, run.cover, &run.cert);
      if (!w.agreement) o.fail("witness on cover " + std::to_string(n));
      ++witness;
    }
  }
  for (std::size_t n = 0; n < g_torus.size(); ++n) {
    const auto rep = oracle::cross_validate(g_torus[n].cert, g_torus[n].cover);
    if (!rep.agreement) o.fail("torus cert " + std::to_string(n) + ": " + rep.note);
  }
  if (g_circle.empty() || g_torus.empty()) o.fail("no certificates collected");
  if (o.ok) {
    o.detail = std::to_string(g_circle.size() + g_torus.size()) + " certificates cross-validated, " +
               std::to_string(witness) + " witness searches";
  }
  return o;
}

Outcome rotation_invariance() {
  Outcome o;
  std::mt19937_64 rng(1009);
  for (int n = 0; n < 50; ++n) {
    const int t = static_cast<int>(uniform(rng, 2, 3));
    const int r = static_cast<int>(uniform(rng, 2, 3));
    const auto cover = testing::random_circle_cover(rng, t, 4, 32);
    const auto p = build_partition(r, t);
    const Rational alpha(uniform(rng, 0, 996), 997);
    const Rational theta(uniform(rng, 0, 1008), 1009);
    for (int m = 1; m <= t; ++m) {
      const auto rotated = cover.at(m).translated(alpha);
      for (int i = 1; i <= r; ++i) {
        const Rational lhs = rotated.translated(theta).intersect(p.part(i)).measure();
        const Rational rhs = cover.at(m).translated((theta + alpha).mod1()).intersect(p.part(i)).measure();
        if (lhs != rhs || lhs != correlation_value(p.part(i), rotated, theta)) {
          o.fail("instance " + std::to_string(n));
        }
      }
    }
  }
  if (o.ok) o.detail = "50 instances";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;  // 0: none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1 mean-value identity", 10, mean_value},
      {"AC2 strict-intermediate witness", 0, strict_intermediate_witness},
      {"AC3 partition exactness", 0, partition_exactness},
      {"AC4 circle certificates", 60, circle_certificates},
      {"AC5 worked instance", 0, worked_instance},
      {"AC6 torus certificates", 120, torus_certificates},
      {"AC7 Fubini cross-check", 0, fubini},
      {"AC8 oracle equivalence", 0, oracle_equivalence},
      {"AC9 rotation invariance", 0, rotation_invariance},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      std::ostringstream os;
      os << "over the " << c.budget_s << " s budget";
      out.fail(os.str());
    }
    std::printf("%s %s (%.2f s): %s\n", out.ok ? "PASS" : "FAIL", c.name, secs, out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
