#include "raimi/io.hpp"

#include <json.hpp>

#include "raimi/error.hpp"

namespace raimi::io {

namespace {

using nlohmann::json;

json to_json(const Rational& q) { return q.str(); }

json to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.str());
  return out;
}

Rational rational_from(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InvalidInput("expected a rational string, got " + j.dump());
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

std::pair<Rational, Rational> pair_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("expected a [lo, hi] pair, got " + j.dump());
  return {rational_from(j[0]), rational_from(j[1])};
}

json interval_json(const Interval& iv) { return json::array({iv.lo.str(), iv.hi.str()}); }

std::string emit(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

// Wraps nlohmann's type/key errors as InvalidInput.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("unexpected JSON structure: ") + e.what());
  }
}

json step_json(const StepRecord& st, bool with_masses) {
  json j = {{"s", st.s},
            {"threshold", to_json(st.threshold)},
            {"chosen_j", st.chosen_j},
            {"c_j", to_json(st.c_j)},
            {"theta_next", to_json(st.theta_next)}};
  if (with_masses) j["masses"] = to_json(st.masses);
  return j;
}

json circle_cert_json(const RaimiCertificate& c, bool with_masses) {
  json steps = json::array();
  for (const auto& st : c.trace.steps) steps.push_back(step_json(st, with_masses));
  return {{"r", c.partition.r},
          {"t", c.partition.t},
          {"k", c.partition.k},
          {"m", c.m},
          {"beta", to_json(c.trace.beta)},
          {"theta", to_json(c.theta)},
          {"thetas", to_json(c.trace.thetas)},
          {"phis", to_json(c.trace.phis)},
          {"steps", steps},
          {"measures", to_json(c.measures)},
          {"bounds", to_json(c.bounds)},
          {"verified", c.verified}};
}

RaimiCertificate circle_cert_from(const json& j) {
  RaimiCertificate c;
  c.partition = build_partition(j.at("r").get<int>(), j.at("t").get<int>(),
                                j.at("k").get<std::int64_t>());
  c.m = j.at("m").get<int>();
  c.theta = rational_from(j.at("theta"));
  c.measures = rationals_from(j.at("measures"));
  c.bounds = rationals_from(j.at("bounds"));
  c.verified = j.at("verified").get<bool>();
  c.trace.m = c.m;
  c.trace.beta = rational_from(j.at("beta"));
  c.trace.thetas = rationals_from(j.at("thetas"));
  c.trace.phis = rationals_from(j.at("phis"));
  for (const auto& sj : j.at("steps")) {
    StepRecord st;
    st.s = sj.at("s").get<int>();
    st.threshold = rational_from(sj.at("threshold"));
    st.chosen_j = sj.at("chosen_j").get<std::int64_t>();
    st.c_j = rational_from(sj.at("c_j"));
    st.theta_next = rational_from(sj.at("theta_next"));
    if (sj.contains("masses")) st.masses = rationals_from(sj.at("masses"));
    c.trace.steps.push_back(std::move(st));
  }
  return c;
}

}  // namespace

AnyCover parse_cover(std::string_view text) {
  const json doc = parse_json(text);
  return guarded([&]() -> AnyCover {
    const int dim = doc.at("dim").get<int>();
    if (dim < 1) throw InvalidInput("dim must be >= 1");
    const json& members = doc.at("cover");
    if (!members.is_array()) throw InvalidInput("\"cover\" must be an array");

    if (dim == 1) {
      CircleCover cover;
      for (const auto& mj : members) {
        std::vector<std::pair<Rational, Rational>> arcs;
        for (const auto& box : mj.at("boxes")) {
          if (!box.is_array() || box.size() != 1) {
            throw InvalidInput("a dim-1 box must hold exactly one [lo, hi] pair");
          }
          arcs.push_back(pair_from(box[0]));
        }
        cover.sets.push_back(CircleSet::normalize(arcs));
        cover.names.push_back(mj.value("name", ""));
      }
      cover.validate();
      return cover;
    }

    TorusCover cover;
    cover.dim = dim;
    for (const auto& mj : members) {
      std::vector<Box> boxes;
      for (const auto& bj : mj.at("boxes")) {
        if (!bj.is_array() || bj.size() != static_cast<std::size_t>(dim)) {
          throw InvalidInput("box " + bj.dump() + " does not have " + std::to_string(dim) + " sides");
        }
        Box b;
        for (const auto& side : bj) {
          auto [lo, hi] = pair_from(side);
          b.sides.push_back({std::move(lo), std::move(hi)});
        }
        boxes.push_back(std::move(b));
      }
      cover.sets.push_back(BoxSet::disjointify(boxes, dim));
      cover.names.push_back(mj.value("name", ""));
    }
    cover.validate();
    return cover;
  });
}

std::string cover_to_json(const CircleCover& cover) {
  json members = json::array();
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    json boxes = json::array();
    for (const auto& iv : cover.sets[i].intervals()) boxes.push_back(json::array({interval_json(iv)}));
    const std::string name = i < cover.names.size() && !cover.names[i].empty()
                                 ? cover.names[i]
                                 : "F" + std::to_string(i + 1);
    members.push_back({{"name", name}, {"boxes", boxes}});
  }
  return emit({{"dim", 1}, {"cover", members}});
}

std::string cover_to_json(const TorusCover& cover) {
  json members = json::array();
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    json boxes = json::array();
    for (const auto& b : cover.sets[i].boxes()) {
      json sides = json::array();
      for (const auto& s : b.sides) sides.push_back(interval_json(s));
      boxes.push_back(sides);
    }
    const std::string name = i < cover.names.size() && !cover.names[i].empty()
                                 ? cover.names[i]
                                 : "F" + std::to_string(i + 1);
    members.push_back({{"name", name}, {"boxes", boxes}});
  }
  return emit({{"dim", cover.dim}, {"cover", members}});
}

CircleSet parse_circle_set(std::string_view text) {
  const json doc = parse_json(text);
  return guarded([&] {
    if (!doc.is_array()) throw InvalidInput("a circle set is a JSON array of [lo, hi] pairs");
    std::vector<std::pair<Rational, Rational>> arcs;
    for (const auto& p : doc) arcs.push_back(pair_from(p));
    return CircleSet::normalize(arcs);
  });
}

std::string circle_set_to_json(const CircleSet& s) {
  json out = json::array();
  for (const auto& iv : s.intervals()) out.push_back(interval_json(iv));
  return emit(out);
}

std::string partition_to_json(const GeometricPartition& p) {
  json parts = json::array();
  for (const auto& e : p.parts) {
    for (const auto& iv : e.intervals()) parts.push_back(interval_json(iv));
  }
  return emit({{"r", p.r},
               {"t", p.t},
               {"k", p.k},
               {"deltas", to_json(p.deltas)},
               {"anchors", to_json(p.anchors)},
               {"parts", parts}});
}

std::string certificate_to_json(const RaimiCertificate& cert, bool with_masses) {
  return emit(circle_cert_json(cert, with_masses));
}

std::string certificate_to_json(const TorusCertificate& cert, bool with_masses) {
  const json circle = circle_cert_json(cert.circle, with_masses);
  return emit({{"dim", cert.dim},
               {"r", cert.circle.partition.r},
               {"t", cert.circle.partition.t},
               {"k", cert.circle.partition.k},
               {"beta", circle.at("beta")},
               {"m_star", cert.m_star},
               {"theta", to_json(cert.theta)},
               {"measures", to_json(cert.measures)},
               {"transfer_bounds", to_json(cert.transfer_bounds)},
               {"slice_breakpoints", to_json(cert.slice_breakpoints)},
               {"selector", cert.selector},
               {"verified", cert.verified},
               {"circle", circle}});
}

AnyCertificate parse_certificate(std::string_view text) {
  const json doc = parse_json(text);
  return guarded([&]() -> AnyCertificate {
    if (!doc.contains("dim")) return circle_cert_from(doc);
    TorusCertificate c;
    c.dim = doc.at("dim").get<int>();
    c.circle = circle_cert_from(doc.at("circle"));
    c.m_star = doc.at("m_star").get<int>();
    c.theta = rationals_from(doc.at("theta"));
    c.measures = rationals_from(doc.at("measures"));
    c.transfer_bounds = rationals_from(doc.at("transfer_bounds"));
    c.slice_breakpoints = rationals_from(doc.at("slice_breakpoints"));
    c.selector = doc.at("selector").get<std::vector<int>>();
    c.verified = doc.at("verified").get<bool>();
    return c;
  });
}

std::string profile_csv(const CorrelationProfile& profile) {
  std::string out = "theta,f\n";
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    out += profile.breakpoints[i].str() + "," + profile.values[i].str() + "\n";
  }
  return out;
}

std::string report_to_json(const oracle::OracleReport& rep) {
  auto opt = [](const auto& o) -> json { return o ? to_json(*o) : json(nullptr); };
  json mism = json::array();
  for (const auto& m : rep.mismatches) {
    mism.push_back({{"field", m.field},
                    {"index", m.index},
                    {"stored", m.stored},
                    {"recomputed", m.recomputed}});
  }
  return emit({{"digest", rep.digest},
               {"best_m", rep.best_m ? json(*rep.best_m) : json(nullptr)},
               {"best_theta", opt(rep.best_theta)},
               {"best_min_measure", opt(rep.best_min_measure)},
               {"solver_theta", opt(rep.solver_theta)},
               {"solver_min_measure", opt(rep.solver_min_measure)},
               {"candidates", rep.candidates},
               {"grid", rep.grid},
               {"mismatches", mism},
               {"note", rep.note},
               {"agreement", rep.agreement}});
}

}  // namespace raimi::io
