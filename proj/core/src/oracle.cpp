#include "raimi/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "raimi/error.hpp"

namespace raimi::oracle {

namespace {

using Arc = std::pair<Rational, Rational>;  // [lo, hi) within [0, 1]
using Arcs = std::vector<Arc>;

Arcs arcs_of(const CircleSet& s) {
  Arcs out;
  for (const auto& iv : s.intervals()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

// Endpoints of E_1..E_r recomputed from (r, t, k) alone.
std::vector<Arc> partition_arcs(int r, std::int64_t k) {
  Rational sum;
  Rational term(1);
  for (int i = 0; i < r; ++i) {
    sum += term;
    term /= Rational(k);
  }
  std::vector<Arc> out;
  Rational lo;
  Rational len = Rational(1) / sum;
  for (int i = 0; i < r; ++i) {
    const Rational hi = i + 1 == r ? Rational(1) : lo + len;
    out.emplace_back(lo, hi);
    lo = hi;
    len /= Rational(k);
  }
  return out;
}

Rational overlap_len(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  const Rational lo = max(a, c);
  const Rational hi = min(b, d);
  return lo < hi ? hi - lo : Rational(0);
}

// |(F + theta) ∩ E| on the circle. F + theta lives in [0, 2); its part past
// 1 is compared against E shifted up by one.
Rational shifted_overlap(const Arcs& e, const Arcs& f, const Rational& theta) {
  const Rational th = theta.mod1();
  const Rational one(1);
  Rational total;
  for (const auto& [flo, fhi] : f) {
    const Rational lo = flo + th;
    const Rational hi = fhi + th;
    for (const auto& [elo, ehi] : e) {
      total += overlap_len(elo, ehi, lo, hi);
      total += overlap_len(elo + one, ehi + one, lo, hi);
    }
  }
  return total;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw LatticeTooLarge("lattice resolution exceeds 64 bits");
  return z.get_si();
}

// x·q as an integer; InvalidInput if x is not on the 1/q lattice.
std::int64_t on_lattice(const Rational& x, std::int64_t q) {
  const Rational scaled = x * Rational(q);
  if (!scaled.is_integer()) {
    throw InvalidInput("resolution " + std::to_string(q) + " is not a multiple of the denominator of " +
                       x.str());
  }
  return to_i64(scaled.num());
}

struct IntArc {
  std::int64_t lo, hi;
};

std::vector<IntArc> to_lattice(const Arcs& arcs, std::int64_t q) {
  std::vector<IntArc> out;
  for (const auto& [lo, hi] : arcs) out.push_back({on_lattice(lo, q), on_lattice(hi, q)});
  return out;
}

bool member(const std::vector<IntArc>& arcs, std::int64_t x) {
  for (const auto& a : arcs) {
    if (a.lo <= x && x < a.hi) return true;
  }
  return false;
}

// Lattice count of |(F + theta) ∩ E| at resolution q.
Rational lattice_overlap(const Arcs& e, const Arcs& f, const Rational& theta, std::int64_t q) {
  const auto ei = to_lattice(e, q);
  const auto fi = to_lattice(f, q);
  const std::int64_t shift = on_lattice(theta.mod1(), q);
  std::int64_t count = 0;
  for (const auto& a : ei) {
    for (std::int64_t x = a.lo; x < a.hi; ++x) {
      std::int64_t y = x - shift;
      if (y < 0) y += q;
      if (member(fi, y)) ++count;
    }
  }
  return Rational(count, q);
}

void absorb(mpz_class& q, const Rational& x) { q = lcm(q, x.den()); }
void absorb(mpz_class& q, const Arcs& arcs) {
  for (const auto& [lo, hi] : arcs) {
    absorb(q, lo);
    absorb(q, hi);
  }
}

std::string describe(const std::vector<Arcs>& sets) {
  std::ostringstream os;
  for (const auto& s : sets) {
    os << "{";
    for (const auto& [lo, hi] : s) os << "[" << lo << "," << hi << ")";
    os << "}";
  }
  return os.str();
}

Rational min_over_parts(const std::vector<Arc>& parts, const Arcs& f, const Rational& theta) {
  Rational best;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Rational v = shifted_overlap({parts[i]}, f, theta);
    if (i == 0 || v < best) best = v;
  }
  return best;
}

void check_lattice_size(std::int64_t points) {
  if (points > kMaxLatticePoints) {
    throw LatticeTooLarge("lattice of " + std::to_string(points) + " points exceeds the oracle limit");
  }
}

}  // namespace

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rational grid_measure(const CircleSet& s, std::int64_t q) {
  if (q <= 0) throw InvalidInput("lattice resolution must be positive");
  check_lattice_size(q);
  const auto arcs = to_lattice(arcs_of(s), q);
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < q; ++x) {
    if (member(arcs, x)) ++count;
  }
  return Rational(count, q);
}

Rational grid_measure(const BoxSet& s, std::span<const std::int64_t> q) {
  const auto n = static_cast<std::size_t>(s.dim());
  if (q.size() != n) throw InvalidInput("one lattice resolution per axis required");
  std::int64_t points = 1;
  for (auto qd : q) {
    if (qd <= 0) throw InvalidInput("lattice resolution must be positive");
    if (points > kMaxLatticePoints / qd) check_lattice_size(kMaxLatticePoints + 1);
    points *= qd;
  }
  check_lattice_size(points);

  std::vector<std::vector<IntArc>> boxes;
  for (const auto& b : s.boxes()) {
    std::vector<IntArc> sides;
    for (std::size_t d = 0; d < n; ++d) {
      sides.push_back({on_lattice(b.sides[d].lo, q[d]), on_lattice(b.sides[d].hi, q[d])});
    }
    boxes.push_back(std::move(sides));
  }

  std::vector<std::int64_t> idx(n, 0);
  std::int64_t count = 0;
  for (std::int64_t p = 0; p < points; ++p) {
    const bool inside = std::any_of(boxes.begin(), boxes.end(), [&](const auto& sides) {
      for (std::size_t d = 0; d < n; ++d) {
        if (idx[d] < sides[d].lo || idx[d] >= sides[d].hi) return false;
      }
      return true;
    });
    if (inside) ++count;
    for (std::size_t d = n; d-- > 0;) {
      if (++idx[d] < q[d]) break;
      idx[d] = 0;
    }
  }
  return Rational(mpz_class(count), mpz_class(points));
}

Rational grid_measure(const BoxSet& s, std::int64_t q) {
  const std::vector<std::int64_t> per_axis(static_cast<std::size_t>(s.dim()), q);
  return grid_measure(s, per_axis);
}

OracleReport exhaustive_witness(const GeometricPartition& partition, const CircleCover& cover,
                                const RaimiCertificate* solver) {
  std::vector<Arc> parts;
  for (const auto& e : partition.parts) {
    for (const auto& a : arcs_of(e)) parts.push_back(a);
  }
  std::vector<Arcs> sets;
  for (const auto& f : cover.sets) sets.push_back(arcs_of(f));

  OracleReport rep;
  rep.digest = digest("r=" + std::to_string(partition.r) + ";k=" + std::to_string(partition.k) +
                      ";" + describe(sets));

  for (std::size_t mi = 0; mi < sets.size(); ++mi) {
    const Arcs& f = sets[mi];
    if (f.empty()) continue;

    // Breakpoints of every g_i(theta) = |(F + theta) ∩ E_i|.
    std::vector<Rational> bps;
    for (const auto& [elo, ehi] : parts) {
      for (const auto& [flo, fhi] : f) {
        for (const auto* e : {&elo, &ehi}) {
          for (const auto* g : {&flo, &fhi}) bps.push_back((*e - *g).mod1());
        }
      }
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    // Every g_i is affine on each arc; min_i g_i is concave there, so its
    // maximum is at an arc end or where two pieces cross.
    std::vector<Rational> candidates = bps;
    std::vector<std::vector<Rational>> at_bp(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (const auto& b : bps) at_bp[i].push_back(shifted_overlap({parts[i]}, f, b));
    }
    for (std::size_t q = 0; q < bps.size(); ++q) {
      const std::size_t nq = (q + 1) % bps.size();
      const Rational a = bps[q];
      const Rational b = nq > q ? bps[nq] : bps[nq] + Rational(1);
      const Rational width = b - a;
      candidates.push_back(((a + b) / Rational(2)).mod1());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          const Rational si = (at_bp[i][nq] - at_bp[i][q]) / width;
          const Rational sj = (at_bp[j][nq] - at_bp[j][q]) / width;
          if (si == sj) continue;
          const Rational x = a + (at_bp[j][q] - at_bp[i][q]) / (si - sj);
          if (a < x && x < b) candidates.push_back(x.mod1());
        }
      }
      if (candidates.size() > kMaxCandidates) {
        throw InvalidInput("exhaustive_witness: candidate set exceeds " +
                           std::to_string(kMaxCandidates));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    rep.candidates += candidates.size();

    const int m = static_cast<int>(mi) + 1;
    for (const auto& theta : candidates) {
      const Rational v = min_over_parts(parts, f, theta);
      const bool better = !rep.best_min_measure || *rep.best_min_measure < v ||
                          (*rep.best_min_measure == v && theta < *rep.best_theta);
      if (better) {
        rep.best_min_measure = v;
        rep.best_theta = theta;
        rep.best_m = m;
      }
    }
  }

  if (!solver) {
    rep.agreement = rep.best_min_measure && rep.best_min_measure->sign() > 0;
    return rep;
  }

  rep.solver_theta = solver->theta;
  bool ok = solver->m >= 1 && solver->m <= cover.t() &&
            solver->measures.size() == parts.size();
  if (ok) {
    const Arcs& f = sets[static_cast<std::size_t>(solver->m - 1)];
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Rational v = shifted_overlap({parts[i]}, f, solver->theta);
      if (v != solver->measures[i]) {
        rep.mismatches.push_back({"measures", i + 1, solver->measures[i].str(), v.str()});
      }
      if (i == 0 || v < *rep.solver_min_measure) rep.solver_min_measure = v;
    }
  }
  ok = ok && rep.mismatches.empty() && rep.solver_min_measure &&
       rep.solver_min_measure->sign() > 0 && rep.best_min_measure &&
       *rep.best_min_measure >= *rep.solver_min_measure;
  rep.agreement = ok;
  return rep;
}

OracleReport cross_validate(const RaimiCertificate& cert, const CircleCover& cover) {
  const GeometricPartition& p = cert.partition;
  const auto parts = partition_arcs(p.r, p.k);
  std::vector<Arcs> sets;
  for (const auto& f : cover.sets) sets.push_back(arcs_of(f));

  OracleReport rep;
  rep.digest = digest("r=" + std::to_string(p.r) + ";k=" + std::to_string(p.k) + ";" +
                      describe(sets));
  rep.solver_theta = cert.theta;
  if (cert.m < 1 || cert.m > cover.t() || cert.measures.size() != parts.size()) {
    rep.note = "certificate shape does not match the instance";
    return rep;
  }
  const Arcs& f = sets[static_cast<std::size_t>(cert.m - 1)];

  mpz_class qz = 1;
  absorb(qz, f);
  absorb(qz, cert.theta);
  for (const auto& a : parts) absorb(qz, Arcs{a});
  for (const auto& m : cert.measures) absorb(qz, m);

  try {
    const std::int64_t q = to_i64(qz);
    check_lattice_size(q);
    rep.grid = {q};
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Rational v = lattice_overlap({parts[i]}, f, cert.theta, q);
      if (v != cert.measures[i]) {
        rep.mismatches.push_back({"measures", i + 1, cert.measures[i].str(), v.str()});
      }
      if (i == 0 || v < *rep.solver_min_measure) rep.solver_min_measure = v;
    }
  } catch (const LatticeTooLarge& e) {
    rep.note = std::string("skipped: ") + e.what();
    return rep;
  }
  rep.agreement = rep.mismatches.empty() && rep.solver_min_measure->sign() > 0;
  return rep;
}

OracleReport cross_validate(const TorusCertificate& cert, const TorusCover& cover) {
  const RaimiCertificate& circ = cert.circle;
  const GeometricPartition& p = circ.partition;
  const auto n = static_cast<std::size_t>(cover.dim);
  const auto parts = partition_arcs(p.r, p.k);

  OracleReport rep;
  {
    std::ostringstream os;
    os << "dim=" << cover.dim << ";r=" << p.r << ";k=" << p.k << ";";
    for (const auto& s : cover.sets) {
      os << "{";
      for (const auto& b : s.boxes()) {
        os << "(";
        for (const auto& side : b.sides) os << "[" << side.lo << "," << side.hi << ")";
        os << ")";
      }
      os << "}";
    }
    rep.digest = digest(os.str());
  }
  if (cert.m_star < 1 || cert.m_star > cover.t() || cert.theta.size() != n ||
      cert.measures.size() != parts.size() || circ.measures.size() != parts.size() ||
      cert.selector.size() != cert.slice_breakpoints.size()) {
    rep.note = "certificate shape does not match the instance";
    return rep;
  }
  rep.solver_theta = cert.theta[0];
  const BoxSet& f = cover.at(cert.m_star);
  const Rational inv_t(1, cover.t());

  // C_{m*} rebuilt from the stored selector cells.
  Arcs c_star;
  for (std::size_t q = 0; q < cert.selector.size(); ++q) {
    if (cert.selector[q] != cert.m_star) continue;
    const Rational hi = q + 1 < cert.slice_breakpoints.size() ? cert.slice_breakpoints[q + 1]
                                                               : Rational(1);
    c_star.emplace_back(cert.slice_breakpoints[q], hi);
  }

  mpz_class q0 = 1;
  std::vector<mpz_class> qd(n, mpz_class(1));
  for (const auto& b : f.boxes()) {
    for (std::size_t d = 0; d < n; ++d) {
      absorb(qd[d], b.sides[d].lo);
      absorb(qd[d], b.sides[d].hi);
    }
  }
  for (const auto& x : cert.theta) absorb(qd[0], x);
  for (const auto& a : parts) absorb(qd[0], Arcs{a});
  absorb(q0, c_star);
  absorb(q0, circ.theta);
  for (const auto& a : parts) absorb(q0, Arcs{a});

  try {
    const std::int64_t qc = to_i64(q0);
    check_lattice_size(qc);
    std::vector<std::int64_t> q;
    std::int64_t points = 1;
    for (const auto& z : qd) {
      q.push_back(to_i64(z));
      if (points > kMaxLatticePoints / q.back()) check_lattice_size(kMaxLatticePoints + 1);
      points *= q.back();
    }
    check_lattice_size(points);
    rep.grid = q;

    // Circle side: |R_theta1(C_{m*}) ∩ E_i|.
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Rational v = lattice_overlap({parts[i]}, c_star, circ.theta, qc);
      if (v != circ.measures[i]) {
        rep.mismatches.push_back({"circle.measures", i + 1, circ.measures[i].str(), v.str()});
      }
      const Rational bound = inv_t * v;
      if (i < cert.transfer_bounds.size() && bound != cert.transfer_bounds[i]) {
        rep.mismatches.push_back({"transfer_bounds", i + 1, cert.transfer_bounds[i].str(), bound.str()});
      }
    }

    // Torus side: lattice points (x, y) with x in E_i and (x - theta, y) in F_{m*}.
    std::vector<std::vector<IntArc>> boxes;
    for (const auto& b : f.boxes()) {
      std::vector<IntArc> sides;
      for (std::size_t d = 0; d < n; ++d) {
        sides.push_back({on_lattice(b.sides[d].lo, q[d]), on_lattice(b.sides[d].hi, q[d])});
      }
      boxes.push_back(std::move(sides));
    }
    std::vector<std::int64_t> shift;
    for (std::size_t d = 0; d < n; ++d) shift.push_back(on_lattice(cert.theta[d].mod1(), q[d]));

    for (std::size_t i = 0; i < parts.size(); ++i) {
      const IntArc e{on_lattice(parts[i].first, q[0]), on_lattice(parts[i].second, q[0])};
      std::int64_t count = 0;
      std::vector<std::int64_t> idx(n, 0);
      idx[0] = e.lo;
      while (idx[0] < e.hi) {
        std::vector<std::int64_t> pre(n);
        for (std::size_t d = 0; d < n; ++d) {
          pre[d] = idx[d] - shift[d];
          if (pre[d] < 0) pre[d] += q[d];
        }
        const bool inside = std::any_of(boxes.begin(), boxes.end(), [&](const auto& sides) {
          for (std::size_t d = 0; d < n; ++d) {
            if (pre[d] < sides[d].lo || pre[d] >= sides[d].hi) return false;
          }
          return true;
        });
        if (inside) ++count;
        for (std::size_t d = n; d-- > 0;) {
          if (++idx[d] < (d == 0 ? e.hi : q[d])) break;
          if (d == 0) break;
          idx[d] = 0;
        }
      }
      const Rational v{mpz_class(count), mpz_class(points)};
      if (v != cert.measures[i]) {
        rep.mismatches.push_back({"measures", i + 1, cert.measures[i].str(), v.str()});
      }
      if (i == 0 || v < *rep.solver_min_measure) rep.solver_min_measure = v;
      if (!(inv_t * circ.measures[i] <= v)) {
        rep.mismatches.push_back({"transfer_inequality", i + 1, (inv_t * circ.measures[i]).str(), v.str()});
      }
    }
  } catch (const LatticeTooLarge& e) {
    rep.note = std::string("skipped: ") + e.what();
    return rep;
  }
  rep.agreement = rep.mismatches.empty() && rep.solver_min_measure->sign() > 0;
  return rep;
}

}  // namespace raimi::oracle
