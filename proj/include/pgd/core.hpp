#pragma once

// Exact solution representation for the zero-pressure system in the quarter
// plane x > 0, t > 0: constant states and centered fans separated by fronts
// that are stored in closed form (straight lines or sqrt(t) curves), with
// delta atoms of strength e(t) = alpha t + beta sqrt(t) + gamma.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgd/error.hpp"

namespace pgd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Absolute tolerance for deciding that a query point sits on a front.
inline constexpr double kOnFrontTolerance = 1e-12;

struct State {
  double u = 0.0;
  double rho = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

struct ConstantRegion {
  State state;
};

/// Centered rarefaction: u = (x - center_x) / t, rho = 0.
struct FanRegion {
  double center_x = 0.0;
};

using Region = std::variant<ConstantRegion, FanRegion>;

inline bool is_fan(const Region& r) { return std::holds_alternative<FanRegion>(r); }

inline State region_state_at(const Region& region, double x, double t) {
  if (const auto* fan = std::get_if<FanRegion>(&region)) {
    return State{(x - fan->center_x) / t, 0.0};
  }
  return std::get<ConstantRegion>(region).state;
}

inline bool same_region(const Region& a, const Region& b) {
  if (a.index() != b.index()) return false;
  if (const auto* fa = std::get_if<FanRegion>(&a)) {
    return fa->center_x == std::get<FanRegion>(b).center_x;
  }
  return std::get<ConstantRegion>(a).state == std::get<ConstantRegion>(b).state;
}

/// Strength of a delta wave, e(t) = alpha t + beta sqrt(t) + gamma.
struct DeltaAtom {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Zero-strength atom carried by a shock between vacuum states.
  bool degenerate = false;

  double strength(double t) const { return alpha * t + beta * std::sqrt(t) + gamma; }
  double rate(double t) const { return alpha + 0.5 * beta / std::sqrt(t); }
};

struct LineCurve {
  double speed = 0.0;
  double intercept = 0.0;
};

/// x(t) = center_x + u_const t + coeff_c sqrt(t): a shock bordering a fan
/// centered at center_x on one side and the constant velocity u_const on the other.
struct SqrtCurve {
  double center_x = 0.0;
  double u_const = 0.0;
  double coeff_c = 0.0;
};

/// Coefficients of x(t) = a t + b sqrt(t) + d, shared by both curve kinds.
struct CurveCoefficients {
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
};

struct FrontCurve {
  int id = -1;
  std::variant<LineCurve, SqrtCurve> shape;
  double t_start = 0.0;
  double t_end = kInfinity;
  std::optional<DeltaAtom> atom;

  bool is_line() const { return std::holds_alternative<LineCurve>(shape); }

  CurveCoefficients coefficients() const {
    if (const auto* line = std::get_if<LineCurve>(&shape)) {
      return {line->speed, 0.0, line->intercept};
    }
    const auto& c = std::get<SqrtCurve>(shape);
    return {c.u_const, c.coeff_c, c.center_x};
  }

  double position(double t) const {
    const auto c = coefficients();
    return c.a * t + c.b * std::sqrt(t) + c.d;
  }

  double velocity(double t) const {
    const auto c = coefficients();
    if (c.b == 0.0) return c.a;
    return c.a + 0.5 * c.b / std::sqrt(t);
  }

  double strength(double t) const { return atom ? atom->strength(t) : 0.0; }
};

struct TimeSlab {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<FrontCurve> fronts;
  std::vector<Region> regions;  // fronts.size() + 1 entries, left to right
};

struct CaseLabel {
  int case_number = 0;
  int subcase = 0;

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

enum class EventKind { FrontCollision, FanEdgeMerge, BoundaryExit, BoundaryBirth, HorizonReached };

inline const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FrontCollision: return "FrontCollision";
    case EventKind::FanEdgeMerge: return "FanEdgeMerge";
    case EventKind::BoundaryExit: return "BoundaryExit";
    case EventKind::BoundaryBirth: return "BoundaryBirth";
    case EventKind::HorizonReached: return "HorizonReached";
  }
  return "Unknown";
}

struct EventRecord {
  double time = 0.0;
  double position = 0.0;
  EventKind kind = EventKind::HorizonReached;
  std::vector<int> fronts_before;
  std::vector<int> fronts_after;
  std::vector<double> e_before;
  std::vector<double> e_after;
};

/// Delta mass that left the domain through x = 0.
struct ExitRecord {
  double time = 0.0;
  int front_id = -1;
  double mass = 0.0;
};

struct PiecewiseSolution {
  std::vector<TimeSlab> slabs;
  double horizon = 0.0;
  std::optional<CaseLabel> case_label;
  std::vector<EventRecord> events;
  std::vector<ExitRecord> exits;

  const TimeSlab& slab_at(double t) const {
    if (!(t >= 0.0) || t > horizon) {
      throw Error(ErrorCode::OutOfHorizon,
                  "t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon) + "]");
    }
    for (const auto& slab : slabs) {
      if (t <= slab.t_hi) return slab;
    }
    return slabs.back();
  }
};

struct AtomSample {
  double position = 0.0;
  double strength = 0.0;
};

struct SolutionSample {
  double u = 0.0;
  double rho_regular = 0.0;
  std::vector<AtomSample> atoms;
};

namespace detail {

inline void check_query_time(const PiecewiseSolution& sol, double t) {
  if (!(t > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "solution queried at t <= 0; initial data lives in the scenario");
  }
  if (t > sol.horizon) {
    throw Error(ErrorCode::OutOfHorizon, "t = " + std::to_string(t) + " beyond horizon");
  }
}

}  // namespace detail

/// Index of the region containing x in the slab, ignoring on-front coincidence.
inline std::size_t region_index(const TimeSlab& slab, double x, double t) {
  std::size_t i = 0;
  while (i < slab.fronts.size() && x > slab.fronts[i].position(t)) ++i;
  return i;
}

inline SolutionSample evaluate(const PiecewiseSolution& sol, double x, double t) {
  detail::check_query_time(sol, t);
  if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "evaluate requires x > 0");
  const TimeSlab& slab = sol.slab_at(t);
  for (std::size_t i = 0; i < slab.fronts.size(); ++i) {
    const auto& front = slab.fronts[i];
    if (std::abs(x - front.position(t)) < kOnFrontTolerance) {
      const State left = region_state_at(slab.regions[i], x, t);
      const State right = region_state_at(slab.regions[i + 1], x, t);
      SolutionSample s{front.velocity(t), 0.5 * (left.rho + right.rho), {}};
      if (front.atom) s.atoms.push_back({front.position(t), front.atom->strength(t)});
      return s;
    }
  }
  const State st = region_state_at(slab.regions[region_index(slab, x, t)], x, t);
  return {st.u, st.rho, {}};
}

/// Trace (u, rho) at x -> 0+.
inline State boundary_trace(const PiecewiseSolution& sol, double t) {
  detail::check_query_time(sol, t);
  const TimeSlab& slab = sol.slab_at(t);
  return region_state_at(slab.regions.front(), 0.0, t);
}

inline std::vector<AtomSample> atoms_at(const PiecewiseSolution& sol, double t) {
  detail::check_query_time(sol, t);
  std::vector<AtomSample> out;
  for (const auto& front : sol.slab_at(t).fronts) {
    if (front.atom) out.push_back({front.position(t), front.atom->strength(t)});
  }
  return out;
}

enum class ViolationRule {
  NonFinite,
  SlabPartition,
  RegionCount,
  FrontsCross,
  NonPositivePosition,
  NegativeStrength,
  SpuriousFront,
  FanCenter,
  FrontLifetime,
  FrontDiscontinuity,
};

inline const char* to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::NonFinite: return "NonFinite";
    case ViolationRule::SlabPartition: return "SlabPartition";
    case ViolationRule::RegionCount: return "RegionCount";
    case ViolationRule::FrontsCross: return "FrontsCross";
    case ViolationRule::NonPositivePosition: return "NonPositivePosition";
    case ViolationRule::NegativeStrength: return "NegativeStrength";
    case ViolationRule::SpuriousFront: return "SpuriousFront";
    case ViolationRule::FanCenter: return "FanCenter";
    case ViolationRule::FrontLifetime: return "FrontLifetime";
    case ViolationRule::FrontDiscontinuity: return "FrontDiscontinuity";
  }
  return "Unknown";
}

struct Violation {
  ViolationRule rule;
  int slab = -1;
  int front = -1;
  std::string detail;
};

/// Structural check of every representation invariant; empty result means valid.
inline std::vector<Violation> validate(const PiecewiseSolution& sol) {
  std::vector<Violation> out;
  auto report = [&](ViolationRule rule, int slab, int front, std::string detail) {
    out.push_back({rule, slab, front, std::move(detail)});
  };
  if (sol.slabs.empty()) {
    report(ViolationRule::SlabPartition, -1, -1, "no slabs");
    return out;
  }
  if (sol.slabs.front().t_lo != 0.0) report(ViolationRule::SlabPartition, 0, -1, "first slab does not start at 0");
  if (sol.slabs.back().t_hi != sol.horizon) {
    report(ViolationRule::SlabPartition, static_cast<int>(sol.slabs.size()) - 1, -1, "last slab does not end at horizon");
  }
  constexpr int kSamples = 33;
  for (std::size_t s = 0; s < sol.slabs.size(); ++s) {
    const auto& slab = sol.slabs[s];
    const int si = static_cast<int>(s);
    if (!(slab.t_lo < slab.t_hi)) report(ViolationRule::SlabPartition, si, -1, "empty or inverted slab");
    if (s > 0 && sol.slabs[s - 1].t_hi != slab.t_lo) report(ViolationRule::SlabPartition, si, -1, "gap between slabs");
    if (slab.regions.size() != slab.fronts.size() + 1) {
      report(ViolationRule::RegionCount, si, -1, "regions must number fronts + 1");
      continue;
    }
    for (std::size_t r = 0; r < slab.regions.size(); ++r) {
      if (const auto* fan = std::get_if<FanRegion>(&slab.regions[r])) {
        if (!std::isfinite(fan->center_x) || fan->center_x < 0.0) {
          report(ViolationRule::FanCenter, si, static_cast<int>(r), "fan center must be finite and >= 0");
        }
      } else {
        const State st = std::get<ConstantRegion>(slab.regions[r]).state;
        if (!std::isfinite(st.u) || !std::isfinite(st.rho)) report(ViolationRule::NonFinite, si, -1, "non-finite state");
      }
    }
    for (std::size_t f = 0; f < slab.fronts.size(); ++f) {
      const auto& front = slab.fronts[f];
      const int fi = static_cast<int>(f);
      const auto c = front.coefficients();
      if (!std::isfinite(c.a) || !std::isfinite(c.b) || !std::isfinite(c.d)) {
        report(ViolationRule::NonFinite, si, fi, "non-finite curve coefficients");
        continue;
      }
      if (front.t_start > slab.t_lo || front.t_end < slab.t_hi) {
        report(ViolationRule::FrontLifetime, si, fi, "front lifetime does not cover the slab");
      }
      if (front.atom) {
        const auto& a = *front.atom;
        if (!std::isfinite(a.alpha) || !std::isfinite(a.beta) || !std::isfinite(a.gamma)) {
          report(ViolationRule::NonFinite, si, fi, "non-finite atom coefficients");
        } else if (front.atom->strength(std::max(front.t_start, 0.0)) < -1e-12 ||
                   front.atom->strength(slab.t_lo) < -1e-12 || front.atom->strength(slab.t_hi) < -1e-12) {
          report(ViolationRule::NegativeStrength, si, fi, "atom strength negative");
        }
      }
      const bool has_mass = front.atom && !front.atom->degenerate;
      if (!has_mass && same_region(slab.regions[f], slab.regions[f + 1])) {
        report(ViolationRule::SpuriousFront, si, fi, "front separates identical regions");
      }
    }
    for (int k = 1; k < kSamples; ++k) {
      const double t = slab.t_lo + (slab.t_hi - slab.t_lo) * k / kSamples;
      for (std::size_t f = 0; f < slab.fronts.size(); ++f) {
        const double x = slab.fronts[f].position(t);
        if (!(x > 0.0)) {
          report(ViolationRule::NonPositivePosition, si, static_cast<int>(f), "front at x <= 0 inside slab");
        }
        if (f + 1 < slab.fronts.size() && !(x < slab.fronts[f + 1].position(t))) {
          report(ViolationRule::FrontsCross, si, static_cast<int>(f), "fronts not strictly ordered");
        }
      }
    }
    if (s > 0) {
      // A front alive on both sides of a slab boundary must be the same curve.
      for (std::size_t f = 0; f < slab.fronts.size(); ++f) {
        for (const auto& prev : sol.slabs[s - 1].fronts) {
          if (prev.id != slab.fronts[f].id) continue;
          const double t = slab.t_lo;
          if (std::abs(prev.position(t) - slab.fronts[f].position(t)) > 1e-12 * (1.0 + std::abs(prev.position(t))) ||
              std::abs(prev.strength(t) - slab.fronts[f].strength(t)) > 1e-12 * (1.0 + std::abs(prev.strength(t)))) {
            report(ViolationRule::FrontDiscontinuity, si, static_cast<int>(f), "front changes across slab boundary");
          }
        }
      }
    }
  }
  // Deduplicate repeated sample hits.
  std::vector<Violation> unique;
  for (auto& v : out) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Violation& u) {
      return u.rule == v.rule && u.slab == v.slab && u.front == v.front;
    });
    if (!seen) unique.push_back(std::move(v));
  }
  return unique;
}

}  // namespace pgd
