#pragma once

// JSON form of a PiecewiseSolution. Doubles are written in their shortest
// round-trip form, so reading back reproduces every bit; an open-ended
// front (t_end = inf) is stored as null.

#include <string>

#include <nlohmann/json.hpp>

#include "pgd/core.hpp"

namespace pgd {

using Json = nlohmann::json;

namespace detail {

inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline double number_or_inf(const Json& j) { return j.is_null() ? kInfinity : j.get<double>(); }

inline EventKind event_kind_from(const std::string& s) {
  for (auto k : {EventKind::FrontCollision, EventKind::FanEdgeMerge, EventKind::BoundaryExit, EventKind::BoundaryBirth,
                 EventKind::HorizonReached}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown event kind '" + s + "'");
}

}  // namespace detail

inline void to_json(Json& j, const State& s) { j = Json{{"u", s.u}, {"rho", s.rho}}; }
inline void from_json(const Json& j, State& s) {
  s.u = j.at("u").get<double>();
  s.rho = j.at("rho").get<double>();
}

inline void to_json(Json& j, const Region& r) {
  if (const auto* fan = std::get_if<FanRegion>(&r)) {
    j = Json{{"kind", "fan"}, {"center_x", fan->center_x}};
  } else {
    j = Json{{"kind", "constant"}, {"state", std::get<ConstantRegion>(r).state}};
  }
}
inline void from_json(const Json& j, Region& r) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "fan") {
    r = FanRegion{j.at("center_x").get<double>()};
  } else if (kind == "constant") {
    r = ConstantRegion{j.at("state").get<State>()};
  } else {
    throw Error(ErrorCode::ParseError, "unknown region kind '" + kind + "'");
  }
}

inline void to_json(Json& j, const DeltaAtom& a) {
  j = Json{{"alpha", a.alpha}, {"beta", a.beta}, {"gamma", a.gamma}, {"degenerate", a.degenerate}};
}
inline void from_json(const Json& j, DeltaAtom& a) {
  a.alpha = j.at("alpha").get<double>();
  a.beta = j.at("beta").get<double>();
  a.gamma = j.at("gamma").get<double>();
  a.degenerate = j.value("degenerate", false);
}

inline void to_json(Json& j, const FrontCurve& f) {
  Json shape;
  if (const auto* line = std::get_if<LineCurve>(&f.shape)) {
    shape = Json{{"kind", "line"}, {"speed", line->speed}, {"intercept", line->intercept}};
  } else {
    const auto& c = std::get<SqrtCurve>(f.shape);
    shape = Json{{"kind", "sqrt"}, {"center_x", c.center_x}, {"u_const", c.u_const}, {"coeff_c", c.coeff_c}};
  }
  j = Json{{"id", f.id},
           {"shape", shape},
           {"t_start", f.t_start},
           {"t_end", detail::finite_or_null(f.t_end)},
           {"atom", f.atom ? Json(*f.atom) : Json(nullptr)}};
}
inline void from_json(const Json& j, FrontCurve& f) {
  f.id = j.at("id").get<int>();
  const Json& shape = j.at("shape");
  const auto kind = shape.at("kind").get<std::string>();
  if (kind == "line") {
    f.shape = LineCurve{shape.at("speed").get<double>(), shape.at("intercept").get<double>()};
  } else if (kind == "sqrt") {
    f.shape = SqrtCurve{shape.at("center_x").get<double>(), shape.at("u_const").get<double>(),
                        shape.at("coeff_c").get<double>()};
  } else {
    throw Error(ErrorCode::ParseError, "unknown curve kind '" + kind + "'");
  }
  f.t_start = j.at("t_start").get<double>();
  f.t_end = detail::number_or_inf(j.at("t_end"));
  f.atom.reset();
  if (!j.at("atom").is_null()) f.atom = j.at("atom").get<DeltaAtom>();
}

inline void to_json(Json& j, const TimeSlab& s) {
  j = Json{{"t_lo", s.t_lo}, {"t_hi", s.t_hi}, {"fronts", s.fronts}, {"regions", s.regions}};
}
inline void from_json(const Json& j, TimeSlab& s) {
  s.t_lo = j.at("t_lo").get<double>();
  s.t_hi = j.at("t_hi").get<double>();
  s.fronts = j.at("fronts").get<std::vector<FrontCurve>>();
  s.regions = j.at("regions").get<std::vector<Region>>();
  if (s.regions.size() != s.fronts.size() + 1) throw Error(ErrorCode::ParseError, "slab needs one more region than fronts");
}

inline void to_json(Json& j, const EventRecord& e) {
  j = Json{{"t", e.time},
           {"x", e.position},
           {"kind", to_string(e.kind)},
           {"fronts_before", e.fronts_before},
           {"fronts_after", e.fronts_after},
           {"e_before", e.e_before},
           {"e_after", e.e_after}};
}
inline void from_json(const Json& j, EventRecord& e) {
  e.time = j.at("t").get<double>();
  e.position = j.at("x").get<double>();
  e.kind = detail::event_kind_from(j.at("kind").get<std::string>());
  e.fronts_before = j.at("fronts_before").get<std::vector<int>>();
  e.fronts_after = j.at("fronts_after").get<std::vector<int>>();
  e.e_before = j.at("e_before").get<std::vector<double>>();
  e.e_after = j.at("e_after").get<std::vector<double>>();
}

inline void to_json(Json& j, const ExitRecord& e) { j = Json{{"t", e.time}, {"front", e.front_id}, {"mass", e.mass}}; }
inline void from_json(const Json& j, ExitRecord& e) {
  e.time = j.at("t").get<double>();
  e.front_id = j.at("front").get<int>();
  e.mass = j.at("mass").get<double>();
}

inline void to_json(Json& j, const PiecewiseSolution& s) {
  j = Json{{"horizon", s.horizon}, {"slabs", s.slabs}, {"events", s.events}, {"exits", s.exits}};
  j["case"] = s.case_label ? Json{{"case", s.case_label->case_number}, {"subcase", s.case_label->subcase}} : Json(nullptr);
}
inline void from_json(const Json& j, PiecewiseSolution& s) {
  s.horizon = j.at("horizon").get<double>();
  s.slabs = j.at("slabs").get<std::vector<TimeSlab>>();
  s.events = j.at("events").get<std::vector<EventRecord>>();
  s.exits = j.at("exits").get<std::vector<ExitRecord>>();
  s.case_label.reset();
  if (!j.at("case").is_null()) s.case_label = CaseLabel{j["case"].at("case").get<int>(), j["case"].at("subcase").get<int>()};
  if (s.slabs.empty()) throw Error(ErrorCode::ParseError, "solution has no slabs");
}

inline std::string to_json_text(const PiecewiseSolution& s) { return Json(s).dump(1) + "\n"; }

/// Malformed text or missing keys surface as ParseError.
inline PiecewiseSolution solution_from_json_text(const std::string& text) {
  try {
    return Json::parse(text).get<PiecewiseSolution>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace pgd
