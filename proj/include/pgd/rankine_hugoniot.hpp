#pragma once

// Jump conditions along a front x = s(t) carrying a delta of strength e(t):
//
//   s'(t) = (u- + u+) / 2
//   e'(t) = rho-(u- - s') + rho+(s' - u+)
//
// with "-" the left trace and "+" the right trace. The second line is the
// distributional balance of rho_t + (rho u)_x = 0 across the front; every
// closed-form strength below is an exact antiderivative of it.

#include <cmath>
#include <string>

#include "pgd/core.hpp"

namespace pgd {

/// Trace of a region along one side of a front.
using SideTrace = Region;

/// e(t) = alpha t + beta sqrt(t) + gamma.
using StrengthLaw = DeltaAtom;

enum class FanSide { Left, Right };

inline double shock_speed(double u_minus, double u_plus) { return 0.5 * (u_minus + u_plus); }

inline double strength_rate(double s_prime, const State& left, const State& right) {
  return left.rho * (left.u - s_prime) + right.rho * (s_prime - right.u);
}

/// The balance with the opposite orientation, -s'(rho+ - rho-) + (rho u)+ - (rho u)-.
/// Kept for comparison; it is the negative of strength_rate.
inline double strength_rate_as_printed(double s_prime, const State& left, const State& right) {
  return -s_prime * (right.rho - left.rho) + (right.rho * right.u - left.rho * left.u);
}

inline State trace_state(const SideTrace& side, double x, double t) { return region_state_at(side, x, t); }

/// Exact solution of dx/dt = ((x - fan_center_x)/t + u_const)/2 through (t1, x1).
inline FrontCurve shock_into_fan_curve(double fan_center_x, double u_const, double t1, double x1) {
  if (!(t1 > 0.0) || !std::isfinite(t1)) {
    throw Error(ErrorCode::InvalidAnchor, "anchor time must be positive, got " + std::to_string(t1));
  }
  if (!std::isfinite(x1)) throw Error(ErrorCode::InvalidAnchor, "anchor position must be finite");
  FrontCurve curve;
  curve.shape = SqrtCurve{fan_center_x, u_const, (x1 - fan_center_x - u_const * t1) / std::sqrt(t1)};
  curve.t_start = t1;
  return curve;
}

/// Strength accumulated along a sqrt-curve shock between a fan (zero density)
/// and the constant state it converges with, starting from e1 at t1.
inline StrengthLaw strength_along_sqrt(const FrontCurve& curve, const State& const_side, FanSide fan_on,
                                       double t1, double e1) {
  const auto* sqrt_curve = std::get_if<SqrtCurve>(&curve.shape);
  if (sqrt_curve == nullptr) throw Error(ErrorCode::InvalidArgument, "strength_along_sqrt needs a sqrt curve");
  if (!(t1 > 0.0)) throw Error(ErrorCode::InvalidAnchor, "anchor time must be positive");
  const double c = sqrt_curve->coeff_c;
  // Fan on the right: e' = rho (u - s') = -rho C / (2 sqrt t).
  // Fan on the left:  e' = rho (s' - u) = +rho C / (2 sqrt t).
  const double beta = (fan_on == FanSide::Right ? -1.0 : 1.0) * const_side.rho * c;
  StrengthLaw law{0.0, beta, e1 - beta * std::sqrt(t1), false};
  const double t_end = curve.t_end;
  const double e_end = std::isfinite(t_end) ? law.strength(t_end) : (beta < 0.0 ? -kInfinity : law.strength(t1));
  if (e1 < 0.0 || e_end < -1e-12) {
    throw Error(ErrorCode::NegativeStrength, "strength becomes negative on the front's lifetime");
  }
  return law;
}

/// Strength law along a straight front between two constant states, e(t1) = e1.
inline StrengthLaw strength_along_line(const State& left, const State& right, double t1, double e1) {
  const double s = shock_speed(left.u, right.u);
  const double rate = strength_rate(s, left, right);
  return StrengthLaw{rate, 0.0, e1 - rate * t1, false};
}

}  // namespace pgd
