#include "raimi/raimi_circle.hpp"

#include <sstream>

#include "raimi/correlation.hpp"
#include "raimi/error.hpp"

namespace raimi {

namespace {

Rational overlap(const CircleSet& fm, const Rational& phi, const CircleSet& target) {
  return fm.translated(phi).intersect(target).measure();
}

std::string describe(const RotationTrace& trace) {
  std::ostringstream os;
  os << "m=" << trace.m << " beta=" << trace.beta << " thetas=[";
  for (std::size_t i = 0; i < trace.thetas.size(); ++i) {
    os << (i ? "," : "") << trace.thetas[i];
  }
  os << "] phis=[";
  for (std::size_t i = 0; i < trace.phis.size(); ++i) os << (i ? "," : "") << trace.phis[i];
  os << "]";
  for (const auto& st : trace.steps) {
    os << "\n  step s=" << st.s << " threshold=" << st.threshold << " j=" << st.chosen_j
       << " c_j=" << st.c_j << " theta_next=" << st.theta_next;
  }
  return os.str();
}

void require(bool ok, const std::string& what, const RotationTrace& trace) {
  if (!ok) throw InvariantViolation(what, describe(trace));
}

std::vector<Rational> piece_masses(const GeometricPartition& p, const CircleSet& rotated, int s) {
  std::vector<Rational> masses;
  masses.reserve(static_cast<std::size_t>(p.k));
  for (std::int64_t j = 1; j <= p.k; ++j) {
    const Interval piece = p.subinterval(s, j);
    masses.push_back(rotated.intersect(CircleSet::interval(piece.lo, piece.hi)).measure());
  }
  return masses;
}

}  // namespace

void CircleCover::validate() const {
  if (sets.size() < 2) {
    throw InvalidInput("a cover needs at least t = 2 sets, got " + std::to_string(sets.size()));
  }
  CircleSet all;
  for (const auto& s : sets) all = all.unite(s);
  if (all.measure() != Rational(1)) {
    std::string gaps;
    const CircleSet uncovered = all.complement();
    for (const auto& iv : uncovered.intervals()) {
      gaps += (gaps.empty() ? "" : " ") + std::string("[") + iv.lo.str() + "," + iv.hi.str() + ")";
    }
    throw InvalidInput("sets do not cover the circle; uncovered gap " + gaps);
  }
}

std::pair<int, Rational> select_m(const CircleCover& cover) {
  cover.validate();
  int best = 1;
  Rational best_measure = cover.at(1).measure();
  for (int m = 2; m <= cover.t(); ++m) {
    Rational mm = cover.at(m).measure();
    if (best_measure < mm) {
      best = m;
      best_measure = std::move(mm);
    }
  }
  const Rational beta(1, cover.t());
  if (best_measure < beta) {
    throw InvariantViolation("heaviest cover member has measure " + best_measure.str() +
                             " < 1/t");
  }
  return {best, beta};
}

Rational initial_rotation(const GeometricPartition& partition, const CircleSet& fm) {
  if (fm.empty()) throw InvalidInput("initial_rotation needs a non-empty F_m");
  return argmax(partition.part(1), fm).theta;
}

std::pair<Rational, StepRecord> refine_step(const GeometricPartition& p, const CircleSet& fm,
                                            int s, const Rational& phi_s) {
  if (s < 1 || s > p.r - 1) {
    throw InvalidInput("refine_step needs 1 <= s <= r-1, got s=" + std::to_string(s));
  }
  const Rational beta = p.beta();
  const CircleSet rotated = fm.translated(phi_s);
  const Rational on_part = rotated.intersect(p.part(s)).measure();
  const Rational invariant = beta * pow2(-(s + 2)) * p.delta(s);
  if (on_part < invariant) {
    throw InvariantViolation("loop invariant fails at s=" + std::to_string(s) + ": " +
                             on_part.str() + " < " + invariant.str());
  }

  StepRecord rec;
  rec.s = s;
  rec.masses = piece_masses(p, rotated, s);
  rec.threshold = beta * pow2(-(s + 3)) * p.delta(s + 1);
  for (std::int64_t j = p.k; j >= 1; --j) {
    if (rec.masses[static_cast<std::size_t>(j - 1)] >= rec.threshold) {
      rec.chosen_j = j;
      break;
    }
  }
  if (rec.chosen_j == 0) {
    throw InvariantViolation("no piece of E_" + std::to_string(s) + " reaches threshold " +
                             rec.threshold.str());
  }
  rec.c_j = p.subinterval(s, rec.chosen_j).lo;
  rec.theta_next = p.anchor(s + 1) - rec.c_j;
  if (rec.theta_next.sign() <= 0 || rec.theta_next > p.delta(s)) {
    throw InvariantViolation("theta_" + std::to_string(s + 1) + " = " + rec.theta_next.str() +
                             " outside (0, Delta_s]");
  }
  return {rec.theta_next, std::move(rec)};
}

std::vector<Rational> certificate_bounds(const GeometricPartition& p) {
  std::vector<Rational> bounds;
  const Rational beta = p.beta();
  for (int s = 1; s < p.r; ++s) bounds.push_back(beta * pow2(-(s + 5)) * p.delta(s));
  bounds.push_back(beta * pow2(-(p.r + 2)) * p.delta(p.r));
  return bounds;
}

RaimiCertificate solve(int r, const CircleCover& cover, std::optional<std::int64_t> k) {
  cover.validate();
  RaimiCertificate cert;
  cert.partition = build_partition(r, cover.t(), k);
  const GeometricPartition& p = cert.partition;

  auto [m, beta] = select_m(cover);
  const CircleSet& fm = cover.at(m);
  RotationTrace& trace = cert.trace;
  trace.m = m;
  trace.beta = beta;

  Rational phi = initial_rotation(p, fm);
  trace.thetas.push_back(phi);
  trace.phis.push_back(phi);
  require(overlap(fm, phi, p.part(1)) >= beta * p.delta(1), "f(theta_1) < beta*Delta_1", trace);

  for (int s = 1; s <= r - 1; ++s) {
    auto [theta_next, rec] = refine_step(p, fm, s, phi);
    const Rational next_phi = (phi + theta_next).mod1();
    const Rational retained = overlap(fm, next_phi, p.part(s));
    trace.thetas.push_back(theta_next);
    trace.phis.push_back(next_phi);
    trace.steps.push_back(std::move(rec));
    require(retained >= beta * pow2(-(s + 4)) * p.delta(s),
            "retention fails at s=" + std::to_string(s) + ": " + retained.str(), trace);
    phi = next_phi;
  }
  require(overlap(fm, phi, p.part(r)) >= beta * pow2(-(r + 2)) * p.delta(r),
          "loop invariant fails at s=r", trace);

  // Rotations after step s+1 are short enough that E_s keeps most of its mass.
  const Rational k_minus_one(p.k - 1);
  for (int s = 1; s <= r - 1; ++s) {
    Rational tail;
    for (int i = s + 2; i <= r; ++i) tail += trace.thetas[static_cast<std::size_t>(i - 1)];
    require(tail <= p.delta(s) / k_minus_one &&
                p.delta(s) / k_minus_one <= beta * pow2(-(s + 5)) * p.delta(s),
            "tail rotation bound fails at s=" + std::to_string(s), trace);
  }

  cert.m = m;
  cert.theta = phi;
  cert.bounds = certificate_bounds(p);
  cert.verified = true;
  for (int i = 1; i <= r; ++i) {
    cert.measures.push_back(overlap(fm, phi, p.part(i)));
    const auto& measure = cert.measures.back();
    const auto& bound = cert.bounds[static_cast<std::size_t>(i - 1)];
    if (!(bound.sign() > 0 && measure >= bound)) cert.verified = false;
  }
  return cert;
}

std::string verify_explain(const RaimiCertificate& cert, const CircleCover& cover) {
  const GeometricPartition& stored = cert.partition;
  if (stored.t != cover.t()) {
    throw InvalidInput("certificate has t=" + std::to_string(stored.t) + " but cover has " +
                       std::to_string(cover.t()) + " sets");
  }
  cover.validate();
  const GeometricPartition p = build_partition(stored.r, stored.t, stored.k);
  const int r = p.r;
  const auto ur = static_cast<std::size_t>(r);

  if (stored.deltas != p.deltas || stored.anchors != p.anchors) return "partition mismatch";
  if (cert.m < 1 || cert.m > cover.t()) return "index m out of range";
  const Rational beta = p.beta();
  const CircleSet& fm = cover.at(cert.m);
  if (fm.measure() < beta) return "|F_m| < 1/t";

  const RotationTrace& tr = cert.trace;
  if (tr.m != cert.m) return "trace index differs from m";
  if (tr.beta != beta) return "beta != 1/t";
  if (tr.thetas.size() != ur || tr.phis.size() != ur) return "trace length != r";
  if (tr.steps.size() != ur - 1) return "step count != r-1";

  if (tr.phis[0] != tr.thetas[0].mod1()) return "phi_1 != theta_1";
  for (std::size_t s = 1; s < ur; ++s) {
    if (tr.phis[s] != (tr.phis[s - 1] + tr.thetas[s]).mod1()) {
      return "phi recurrence broken at s=" + std::to_string(s + 1);
    }
  }
  if (cert.theta != tr.phis.back()) return "theta != phi_r";
  if (overlap(fm, tr.thetas[0], p.part(1)) < beta * p.delta(1)) {
    return "f(theta_1) < beta*Delta_1";
  }

  for (int s = 1; s <= r - 1; ++s) {
    const StepRecord& st = tr.steps[static_cast<std::size_t>(s - 1)];
    const std::string at = " at step s=" + std::to_string(s);
    if (st.s != s) return "step numbering" + at;
    if (st.threshold != beta * pow2(-(s + 3)) * p.delta(s + 1)) return "threshold" + at;
    if (st.chosen_j < 1 || st.chosen_j > p.k) return "chosen j out of range" + at;
    if (st.c_j != p.subinterval(s, st.chosen_j).lo) return "c_j" + at;
    const Rational& theta_next = tr.thetas[static_cast<std::size_t>(s)];
    if (st.theta_next != theta_next || theta_next != p.anchor(s + 1) - st.c_j) {
      return "theta_{s+1} != u_{s+1} - c_j" + at;
    }
    if (theta_next.sign() <= 0 || theta_next > p.delta(s)) return "theta outside (0, Delta_s]" + at;
    const auto masses = piece_masses(p, fm.translated(tr.phis[static_cast<std::size_t>(s - 1)]), s);
    if (!st.masses.empty() && st.masses != masses) return "stored masses" + at;
    const auto j = static_cast<std::size_t>(st.chosen_j - 1);
    if (masses[j] < st.threshold) return "chosen piece below threshold" + at;
    for (std::size_t i = j + 1; i < masses.size(); ++i) {
      if (masses[i] >= st.threshold) return "rightmost rule violated" + at;
    }
  }

  const auto bounds = certificate_bounds(p);
  if (cert.bounds != bounds) return "bounds differ from the guaranteed formula";
  if (cert.measures.size() != ur) return "measure count != r";
  for (int i = 1; i <= r; ++i) {
    const auto ui = static_cast<std::size_t>(i - 1);
    const Rational measure = overlap(fm, cert.theta, p.part(i));
    if (measure != cert.measures[ui]) return "stored measure differs for E_" + std::to_string(i);
    if (!(bounds[ui].sign() > 0 && measure >= bounds[ui])) {
      return "measure below bound for E_" + std::to_string(i);
    }
  }
  if (!cert.verified) return "certificate is flagged unverified";
  return {};
}

bool verify(const RaimiCertificate& cert, const CircleCover& cover) {
  return verify_explain(cert, cover).empty();
}

}  // namespace raimi
