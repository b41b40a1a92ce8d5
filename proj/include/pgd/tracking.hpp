#pragma once

// Event-driven front tracking over closed-form fronts. Every front has the
// form x(t) = a t + b sqrt(t) + d, so collisions, boundary exits and fan-edge
// crossings all reduce to quadratics in sqrt(t) and are located exactly.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pgd/core.hpp"
#include "pgd/rankine_hugoniot.hpp"

namespace pgd {

/// Live fronts at time t together with the regions between them.
struct FrontSet {
  double t = 0.0;
  std::vector<FrontCurve> fronts;
  std::vector<Region> regions;
  int next_id = 0;
};

struct Event {
  double time = kInfinity;
  double position = 0.0;
  EventKind kind = EventKind::HorizonReached;
  std::vector<std::size_t> fronts;
};

struct Resolution {
  FrontSet after;
  EventRecord record;
  std::optional<ExitRecord> exit;
};

inline constexpr int kEventCap = 64;

namespace detail {

inline constexpr double kDiscriminantTolerance = 1e-14;

/// Smallest root tau > tau_min of a tau^2 + b tau + d = 0, if any.
inline std::optional<double> earliest_root(double a, double b, double d, double tau_min) {
  const double scale = std::abs(a) + std::abs(b) + std::abs(d);
  if (scale == 0.0) return std::nullopt;
  std::vector<double> roots;
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) return std::nullopt;
    roots.push_back(-d / b);
  } else {
    double disc = b * b - 4.0 * a * d;
    // Tangency (a front born on x = 0 with zero velocity) is a double root; keep it one.
    if (std::abs(disc) <= kDiscriminantTolerance * (b * b + std::abs(4.0 * a * d))) {
      disc = 0.0;
    } else if (disc < 0.0) {
      return std::nullopt;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q != 0.0) {
      roots.push_back(q / a);
      roots.push_back(d / q);
    } else {
      roots.push_back(0.0);
    }
  }
  std::optional<double> best;
  const double threshold = tau_min * (1.0 + 1e-13) + 1e-15;
  for (double r : roots) {
    if (r > threshold && (!best || r < *best)) best = r;
  }
  return best;
}

inline bool is_fan_edge(const FrontSet& fs, std::size_t i) {
  return !fs.fronts[i].atom && (is_fan(fs.regions[i]) || is_fan(fs.regions[i + 1]));
}

inline bool boundary_inert(const State& boundary, const State& trace) {
  const double ub = boundary.u;
  const double u0 = trace.u;
  if (u0 <= 0.0 && ub <= 0.0) return true;
  if (u0 < ub && u0 + ub <= 0.0) return true;
  if (u0 == ub && trace.rho == boundary.rho) return true;
  return false;
}

inline bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b)); }

}  // namespace detail

/// Front between two regions born at (t1, x1) carrying inherited strength e1.
inline FrontCurve make_front(const Region& left, const Region& right, double t1, double x1, double e1, int id) {
  FrontCurve front;
  front.id = id;
  front.t_start = t1;
  const bool left_fan = is_fan(left);
  const bool right_fan = is_fan(right);
  if (left_fan && right_fan) {
    throw Error(ErrorCode::UnresolvedConfiguration, "front between two fans");
  }
  if (!left_fan && !right_fan) {
    const State l = std::get<ConstantRegion>(left).state;
    const State r = std::get<ConstantRegion>(right).state;
    if (l.u < r.u && !detail::close(l.u, r.u)) {
      throw Error(ErrorCode::UnresolvedConfiguration, "collision opens a rarefaction away from t = 0");
    }
    if (detail::close(l.u, r.u)) {
      front.shape = LineCurve{l.u, x1 - l.u * t1};
      if (e1 > 0.0) front.atom = StrengthLaw{0.0, 0.0, e1, false};
      return front;
    }
    const double s = shock_speed(l.u, r.u);
    front.shape = LineCurve{s, x1 - s * t1};
    front.atom = strength_along_line(l, r, t1, e1);
    front.atom->degenerate = l.rho == 0.0 && r.rho == 0.0 && e1 == 0.0;
    return front;
  }
  if (right_fan) {
    const State l = std::get<ConstantRegion>(left).state;
    const double c = std::get<FanRegion>(right).center_x;
    const double v = (x1 - c) / t1;
    if (detail::close(l.u, v)) {
      front.shape = LineCurve{l.u, c};
      if (e1 > 0.0) front.atom = StrengthLaw{0.0, 0.0, e1, false};
      return front;
    }
    if (l.u < v) throw Error(ErrorCode::UnresolvedConfiguration, "constant state slower than adjacent fan");
    FrontCurve curve = shock_into_fan_curve(c, l.u, t1, x1);
    curve.id = id;
    curve.atom = strength_along_sqrt(curve, l, FanSide::Right, t1, e1);
    curve.atom->degenerate = l.rho == 0.0 && e1 == 0.0;
    return curve;
  }
  const State r = std::get<ConstantRegion>(right).state;
  const double c = std::get<FanRegion>(left).center_x;
  const double v = (x1 - c) / t1;
  if (detail::close(r.u, v)) {
    front.shape = LineCurve{r.u, c};
    if (e1 > 0.0) front.atom = StrengthLaw{0.0, 0.0, e1, false};
    return front;
  }
  if (r.u > v) throw Error(ErrorCode::UnresolvedConfiguration, "fan slower than adjacent constant state");
  FrontCurve curve = shock_into_fan_curve(c, r.u, t1, x1);
  curve.id = id;
  curve.atom = strength_along_sqrt(curve, r, FanSide::Left, t1, e1);
  curve.atom->degenerate = r.rho == 0.0 && e1 == 0.0;
  return curve;
}

/// Earliest event strictly after fs.t (or coincidences at fs.t), capped by the horizon.
inline Event next_event(const FrontSet& fs, double horizon, const std::optional<State>& boundary = std::nullopt) {
  Event best;
  best.time = horizon;
  const double t_now = fs.t;
  const double tau_now = std::sqrt(t_now);
  auto consider = [&](double t, double x, EventKind kind, std::vector<std::size_t> idx) {
    if (t < best.time || (t == best.time && best.kind == EventKind::HorizonReached && t <= horizon)) {
      best = Event{t, x, kind, std::move(idx)};
    }
  };
  for (std::size_t i = 0; i + 1 < fs.fronts.size(); ++i) {
    const auto& l = fs.fronts[i];
    const auto& r = fs.fronts[i + 1];
    const EventKind kind = detail::is_fan_edge(fs, i) || detail::is_fan_edge(fs, i + 1) ? EventKind::FanEdgeMerge
                                                                                         : EventKind::FrontCollision;
    if (t_now > 0.0) {
      const double xl = l.position(t_now);
      const double xr = r.position(t_now);
      if (std::abs(xr - xl) <= 1e-12 * (1.0 + std::abs(xl))) {
        consider(t_now, 0.5 * (xl + xr), kind, {i, i + 1});
        continue;
      }
    }
    const auto cl = l.coefficients();
    const auto cr = r.coefficients();
    if (auto tau = detail::earliest_root(cr.a - cl.a, cr.b - cl.b, cr.d - cl.d, tau_now)) {
      const double t = (*tau) * (*tau);
      consider(t, 0.5 * (l.position(t) + r.position(t)), kind, {i, i + 1});
    }
  }
  if (!fs.fronts.empty()) {
    const auto& f = fs.fronts.front();
    if (t_now > 0.0 && f.position(t_now) <= 1e-12 && f.velocity(t_now) < -1e-12) {
      consider(t_now, 0.0, EventKind::BoundaryExit, {0});
    } else {
      const auto c = f.coefficients();
      if (auto tau = detail::earliest_root(c.a, c.b, c.d, tau_now)) {
        consider((*tau) * (*tau), 0.0, EventKind::BoundaryExit, {0});
      }
    }
  }
  if (boundary && boundary->u > 0.0) {
    if (const auto* fan = std::get_if<FanRegion>(&fs.regions.front()); fan && fan->center_x > 0.0) {
      // Trace -c/t climbs into (-u_b, 0) at t = c/u_b, where a shock must leave the boundary.
      const double t_birth = std::max(fan->center_x / boundary->u, t_now);
      // If the fan itself leaves through x = 0 at that instant, the trace lands on -u_b and stays admissible.
      const bool fan_gone = !fs.fronts.empty() && fs.fronts.front().position(t_birth) <= 1e-10 * (1.0 + fan->center_x);
      if (!fan_gone) consider(t_birth, 0.0, EventKind::BoundaryBirth, {});
    }
  }
  if (best.time >= horizon) {
    best = Event{horizon, 0.0, EventKind::HorizonReached, {}};
  }
  return best;
}

inline Resolution resolve_event(const FrontSet& fs, const Event& event,
                                const std::optional<State>& boundary = std::nullopt) {
  Resolution res;
  res.after = fs;
  res.after.t = event.time;
  const double t1 = event.time;
  FrontSet& out = res.after;
  EventRecord& rec = res.record;
  rec.time = t1;
  rec.position = event.position;
  rec.kind = event.kind;
  switch (event.kind) {
    case EventKind::FrontCollision:
    case EventKind::FanEdgeMerge: {
      const std::size_t i = event.fronts.at(0);
      const auto& a = fs.fronts.at(i);
      const auto& b = fs.fronts.at(i + 1);
      const double e1 = a.strength(t1) + b.strength(t1);
      rec.fronts_before = {a.id, b.id};
      rec.e_before = {a.strength(t1), b.strength(t1)};
      FrontCurve merged = make_front(fs.regions[i], fs.regions[i + 2], t1, event.position, e1, out.next_id++);
      out.regions.erase(out.regions.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      out.fronts.erase(out.fronts.begin() + static_cast<std::ptrdiff_t>(i),
                       out.fronts.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      rec.fronts_after = {merged.id};
      rec.e_after = {merged.strength(t1)};
      if (same_region(out.regions[i], out.regions[i + 1]) && !merged.atom) {
        out.regions.erase(out.regions.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        rec.fronts_after.clear();
        rec.e_after.clear();
      } else {
        out.fronts.insert(out.fronts.begin() + static_cast<std::ptrdiff_t>(i), std::move(merged));
      }
      break;
    }
    case EventKind::BoundaryExit: {
      const auto& f = fs.fronts.at(0);
      rec.fronts_before = {f.id};
      rec.e_before = {f.strength(t1)};
      if (f.atom) res.exit = ExitRecord{t1, f.id, f.strength(t1)};
      out.fronts.erase(out.fronts.begin());
      out.regions.erase(out.regions.begin());
      if (boundary) {
        if (const auto* c = std::get_if<ConstantRegion>(&out.regions.front())) {
          if (!detail::boundary_inert(*boundary, c->state)) {
            throw Error(ErrorCode::UnresolvedConfiguration,
                        "boundary Riemann problem re-opens after a front leaves the domain");
          }
        }
      }
      break;
    }
    case EventKind::BoundaryBirth: {
      if (!boundary) throw Error(ErrorCode::UnresolvedConfiguration, "boundary birth without boundary data");
      const Region inflow = ConstantRegion{*boundary};
      FrontCurve born = make_front(inflow, fs.regions.front(), t1, 0.0, 0.0, out.next_id++);
      rec.fronts_after = {born.id};
      rec.e_after = {0.0};
      out.regions.insert(out.regions.begin(), inflow);
      out.fronts.insert(out.fronts.begin(), std::move(born));
      break;
    }
    case EventKind::HorizonReached:
      break;
  }
  return res;
}

/// Runs the event loop from `initial` to the horizon and assembles the slabs.
inline PiecewiseSolution track(FrontSet initial, double horizon, const std::optional<State>& boundary) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be > 0");
  PiecewiseSolution sol;
  sol.horizon = horizon;
  FrontSet fs = std::move(initial);
  int events = 0;
  while (true) {
    const Event ev = next_event(fs, horizon, boundary);
    if (ev.time > fs.t) {
      sol.slabs.push_back(TimeSlab{fs.t, ev.time, fs.fronts, fs.regions});
    }
    if (ev.kind == EventKind::HorizonReached) break;
    if (++events > kEventCap) throw Error(ErrorCode::EventCap, "more than 64 events");
    Resolution res = resolve_event(fs, ev, boundary);
    sol.events.push_back(std::move(res.record));
    if (res.exit) sol.exits.push_back(*res.exit);
    fs = std::move(res.after);
  }
  // Lifetimes: a front ends at the event that consumed it, else at the horizon.
  auto death_time = [&](int id) {
    for (const auto& rec : sol.events) {
      if (std::find(rec.fronts_before.begin(), rec.fronts_before.end(), id) != rec.fronts_before.end()) {
        return rec.time;
      }
    }
    return horizon;
  };
  for (auto& slab : sol.slabs) {
    for (auto& f : slab.fronts) f.t_end = death_time(f.id);
  }
  return sol;
}

}  // namespace pgd
