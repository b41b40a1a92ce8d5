#pragma once

#include <cmath>
#include <optional>

#include "pgd/riemann.hpp"

namespace pgd {

struct ProblemData {
  State boundary;
  State left;
  State right;
  double x0 = 1.0;
  double horizon = 1.0;
};

inline void check_problem(const ProblemData& d) {
  detail::require_finite(d.boundary, "boundary");
  detail::require_finite(d.left, "left");
  detail::require_finite(d.right, "right");
  if (!(d.x0 > 0.0) || !std::isfinite(d.x0)) {
    throw Error(ErrorCode::InvalidArgument, "x0 must be > 0; use solve_boundary_riemann for x0 = 0");
  }
  if (!(d.horizon > 0.0) || !std::isfinite(d.horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be > 0");
  if (d.boundary.rho < 0.0 || d.left.rho < 0.0 || d.right.rho < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "densities must be >= 0");
  }
}

inline CaseLabel classify_case(const ProblemData& d) {
  const double ub = d.boundary.u;
  const double ul = d.left.u;
  const double ur = d.right.u;
  auto by_right = [&](int c) { return CaseLabel{c, ur == ul ? 1 : (ul < ur ? 2 : 3)}; };
  if (ul == ub && ub > 0.0) return by_right(1);
  if (ul == ub) return by_right(2);
  if (ul == ur) {
    if (ul < ub && ul + ub > 0.0) return {3, 1};
    if (ul > 0.0) return {3, ub > 0.0 ? 2 : 3};
    return {3, 4};
  }
  if (ur == ub && ub > 0.0) {
    if (ur < ul) return {4, 1};
    return {4, ub + ul > 0.0 ? 2 : 3};
  }
  if (ur == ub) return {5, ur < ul ? 1 : 2};
  if (ul < ur && ur < ub) return {6, ub + ul > 0.0 ? 1 : 2};
  if (ub < ul && ul < ur) {
    if (ub > 0.0) return {6, 3};
    if (ul > 0.0) return {6, 4};
    return {6, 5};
  }
  if (ul < ub && ub < ur) return {6, ul + ub > 0.0 ? 9 : 5};
  if (ur < ul && ul < ub) return {6, ul + ub > 0.0 ? 10 : 11};
  if (ub < ur && ur < ul) {
    if (ul <= 0.0) return {6, 6};
    if (ub <= 0.0) return {6, 7};
    return {6, 8};
  }
  // ur < ub < ul
  if (ul <= 0.0) return {6, 11};
  if (ub > 0.0) return {6, 12};
  return {6, 13};
}

/// Boundary wave from the corner stitched to the interior wave from x0.
inline FrontSet initial_fronts(const ProblemData& d) {
  FrontSet fs = boundary_wave(BoundaryRiemannData{d.boundary, d.left}, 0);
  FrontSet inner = interior_wave(InteriorRiemannData{d.left, d.right, d.x0}, fs.next_id);
  fs.regions.pop_back();
  fs.regions.insert(fs.regions.end(), inner.regions.begin(), inner.regions.end());
  fs.fronts.insert(fs.fronts.end(), inner.fronts.begin(), inner.fronts.end());
  fs.next_id = inner.next_id;
  fs.t = 0.0;
  return fs;
}

inline Event next_event(const FrontSet& fronts, double t_now, double horizon,
                        const std::optional<State>& boundary = std::nullopt) {
  FrontSet at = fronts;
  at.t = t_now;
  return next_event(at, horizon, boundary);
}

inline PiecewiseSolution evolve(const ProblemData& data) {
  check_problem(data);
  PiecewiseSolution sol = track(initial_fronts(data), data.horizon, data.boundary);
  sol.case_label = classify_case(data);
  return sol;
}

}  // namespace pgd
