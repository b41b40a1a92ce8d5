#pragma once

// Classical fourth-order Runge-Kutta on a uniform step, used to adjudicate
// the closed-form front curves and strength laws.

#include <functional>
#include <span>
#include <vector>

#include "pgd/error.hpp"

namespace pgd {

using OdeSpec = std::function<std::vector<double>(double t, std::span<const double> y)>;

struct TrajectoryPoint {
  double t = 0.0;
  std::vector<double> y;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;

  const std::vector<double>& final_state() const { return points.back().y; }
};

/// Integrates from (t1, y1) to t_end in `steps` equal steps; records every
/// `record_every`-th point plus the last one.
inline Trajectory ode_oracle(const OdeSpec& rhs, double t1, std::vector<double> y1, double t_end, int steps,
                             int record_every = 0) {
  if (steps < 100) throw Error(ErrorCode::InvalidArgument, "ode_oracle needs at least 100 steps");
  if (!(t1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "ode_oracle needs t1 > 0");
  const double h = (t_end - t1) / steps;
  const std::size_t n = y1.size();
  Trajectory out;
  out.points.push_back({t1, y1});
  std::vector<double> y = std::move(y1);
  std::vector<double> tmp(n);
  auto axpy = [&](const std::vector<double>& k, double scale) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + scale * k[i];
    return std::span<const double>(tmp);
  };
  for (int i = 0; i < steps; ++i) {
    const double t = t1 + i * h;
    const auto k1 = rhs(t, y);
    const auto k2 = rhs(t + 0.5 * h, axpy(k1, 0.5 * h));
    const auto k3 = rhs(t + 0.5 * h, axpy(k2, 0.5 * h));
    const auto k4 = rhs(t + h, axpy(k3, h));
    for (std::size_t j = 0; j < n; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    const bool last = i + 1 == steps;
    if (last || (record_every > 0 && (i + 1) % record_every == 0)) {
      out.points.push_back({last ? t_end : t1 + (i + 1) * h, y});
    }
  }
  return out;
}

}  // namespace pgd
