#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "pgd/tracking.hpp"

namespace pgd {

struct InteriorRiemannData {
  State left;
  State right;
  double x0 = 0.0;
};

struct BoundaryRiemannData {
  State boundary;
  State interior;
};

namespace detail {

inline void require_finite(const State& s, const char* name) {
  if (!std::isfinite(s.u) || !std::isfinite(s.rho)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " state must be finite");
  }
}

inline FrontCurve line_front(int id, double speed, double intercept, std::optional<DeltaAtom> atom = std::nullopt) {
  FrontCurve f;
  f.id = id;
  f.shape = LineCurve{speed, intercept};
  f.atom = atom;
  return f;
}

}  // namespace detail

/// Waves issuing from (x0, 0) between `left` and `right`, before any clipping.
inline FrontSet interior_wave(const InteriorRiemannData& d, int first_id = 0) {
  FrontSet fs;
  fs.next_id = first_id;
  const State l = d.left;
  const State r = d.right;
  fs.regions.push_back(ConstantRegion{l});
  if (l.u == r.u) {
    if (l.rho != r.rho) {
      fs.fronts.push_back(detail::line_front(fs.next_id++, l.u, d.x0));
      fs.regions.push_back(ConstantRegion{r});
    }
  } else if (l.u < r.u) {
    fs.fronts.push_back(detail::line_front(fs.next_id++, l.u, d.x0));
    fs.regions.push_back(FanRegion{d.x0});
    fs.fronts.push_back(detail::line_front(fs.next_id++, r.u, d.x0));
    fs.regions.push_back(ConstantRegion{r});
  } else {
    const double s = shock_speed(l.u, r.u);
    DeltaAtom atom{0.5 * (l.u - r.u) * (l.rho + r.rho), 0.0, 0.0, l.rho == 0.0 && r.rho == 0.0};
    fs.fronts.push_back(detail::line_front(fs.next_id++, s, d.x0, atom));
    fs.regions.push_back(ConstantRegion{r});
  }
  return fs;
}

/// Waves entering x > 0 from the corner for boundary data u_b next to interior state u_0.
inline FrontSet boundary_wave(const BoundaryRiemannData& d, int first_id = 0) {
  FrontSet fs;
  fs.next_id = first_id;
  const double ub = d.boundary.u;
  const double u0 = d.interior.u;
  const State inflow = d.boundary;
  const State interior = d.interior;
  if (u0 == ub && ub > 0.0) {
    if (inflow.rho != interior.rho) {
      fs.regions.push_back(ConstantRegion{State{u0, inflow.rho}});
      fs.fronts.push_back(detail::line_front(fs.next_id++, u0, 0.0));
    }
  } else if (0.0 < ub && ub < u0) {
    fs.regions.push_back(ConstantRegion{inflow});
    fs.fronts.push_back(detail::line_front(fs.next_id++, ub, 0.0));
    fs.regions.push_back(FanRegion{0.0});
    fs.fronts.push_back(detail::line_front(fs.next_id++, u0, 0.0));
  } else if (ub <= 0.0 && 0.0 < u0) {
    fs.regions.push_back(FanRegion{0.0});
    fs.fronts.push_back(detail::line_front(fs.next_id++, u0, 0.0));
  } else if (u0 < ub && u0 + ub > 0.0) {
    fs.regions.push_back(ConstantRegion{inflow});
    DeltaAtom atom{0.5 * (ub - u0) * (interior.rho + inflow.rho), 0.0, 0.0,
                   interior.rho == 0.0 && inflow.rho == 0.0};
    fs.fronts.push_back(detail::line_front(fs.next_id++, shock_speed(ub, u0), 0.0, atom));
  }
  // Every other sign pattern leaves the boundary inert.
  fs.regions.push_back(ConstantRegion{interior});
  return fs;
}

/// u_trace in E(u_b): (-inf, 0] for u_b <= 0, {u_b} U (-inf, -u_b] for u_b > 0.
inline bool admissible_set_contains(double u_b, double u_trace) {
  if (u_b <= 0.0) return u_trace <= 0.0;
  return u_trace == u_b || u_trace <= -u_b;
}

namespace detail {

/// Drops fronts that start on x = 0 and never enter x > 0.
inline void clip_at_origin(FrontSet& fs) {
  while (!fs.fronts.empty()) {
    const auto c = fs.fronts.front().coefficients();
    if (c.d > 0.0 || c.a > 0.0) break;
    fs.fronts.erase(fs.fronts.begin());
    fs.regions.erase(fs.regions.begin());
  }
}

}  // namespace detail

/// Contact (1), fan (2) or delta shock (3), by the sign of u_L - u_R.
inline CaseLabel interior_case(const InteriorRiemannData& d) {
  if (d.left.u == d.right.u) return {1, 0};
  return {d.left.u < d.right.u ? 2 : 3, 0};
}

/// The five boundary cases; sign patterns with no wave entering x > 0 fall to case 2.
inline CaseLabel boundary_case(const BoundaryRiemannData& d) {
  const double ub = d.boundary.u, u0 = d.interior.u;
  if (u0 == ub && ub > 0.0) return {1, 0};
  if (u0 > 0.0 && ub < u0) return {ub > 0.0 ? 3 : 4, 0};
  if (u0 < ub && u0 + ub > 0.0) return {5, 0};
  return {2, 0};
}

inline PiecewiseSolution solve_interior_riemann(const InteriorRiemannData& data, double horizon) {
  detail::require_finite(data.left, "left");
  detail::require_finite(data.right, "right");
  if (!(data.x0 >= 0.0) || !std::isfinite(data.x0)) throw Error(ErrorCode::InvalidArgument, "x0 must be >= 0");
  FrontSet fs = interior_wave(data);
  detail::clip_at_origin(fs);
  return track(std::move(fs), horizon, std::nullopt);
}

inline PiecewiseSolution solve_boundary_riemann(const BoundaryRiemannData& data, double horizon) {
  detail::require_finite(data.boundary, "boundary");
  detail::require_finite(data.interior, "interior");
  return track(boundary_wave(data), horizon, data.boundary);
}

}  // namespace pgd
