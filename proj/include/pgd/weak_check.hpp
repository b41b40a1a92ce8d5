#pragma once

// Residual checks: the weak-asymptotic integrals for viscous fields, the
// distributional residual of exact piecewise solutions, data residuals,
// epsilon ladders and mass balance.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "pgd/core.hpp"
#include "pgd/error.hpp"
#include "pgd/front_tracking.hpp"
#include "pgd/numerics.hpp"
#include "pgd/viscous.hpp"

namespace pgd {

/// phi(x) = exp(1 - 1/(1 - s^2)), s = (x - center)/width, on |s| < 1.
struct TestFunction {
  double center = 1.0;
  double width = 0.5;

  TestFunction() = default;
  TestFunction(double c, double w) : center(c), width(w) {
    if (!(w > 0.0) || !(c - w > 0.0) || !std::isfinite(c + w)) {
      throw Error(ErrorCode::InvalidArgument, "test function support must lie inside (0, inf)");
    }
  }

  double lo() const { return center - width; }
  double hi() const { return center + width; }

  double value(double x) const { return derivatives(x)[0]; }
  double d1(double x) const { return derivatives(x)[1]; }
  double d2(double x) const { return derivatives(x)[2]; }
  double d3(double x) const { return derivatives(x)[3]; }

  std::array<double, 4> derivatives(double x) const {
    const double s = (x - center) / width;
    if (!(std::abs(s) < 1.0)) return {0.0, 0.0, 0.0, 0.0};
    const double q = 1.0 - s * s;
    const double f = std::exp(1.0 - 1.0 / q);
    const double g1 = -2.0 * s / (q * q);
    const double g2 = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
    const double g3 = -24.0 * s / (q * q * q) - 48.0 * s * s * s / (q * q * q * q);
    return {f, f * g1 / width, f * (g2 + g1 * g1) / (width * width),
            f * (g3 + 3.0 * g1 * g2 + g1 * g1 * g1) / (width * width * width)};
  }
};

namespace detail {

/// Weights c with sum_j c_j v_j = int g(z) v(z) dz over [lo, hi], where v is
/// the piecewise-cubic interpolant of samples v_j on `grid`.
inline std::vector<double> weighted_rule(const std::vector<double>& grid, const std::function<double(double)>& g,
                                         double lo, double hi) {
  const std::size_t n = grid.size();
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "grid needs at least four samples");
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = std::max(grid[i], lo), b = std::min(grid[i + 1], hi);
    if (!(b > a)) continue;
    const std::size_t first = std::min(i > 0 ? i - 1 : 0, n - 4);
    for (const auto& node : num::qk15_nodes(a, b)) {
      const double gz = node.w_kronrod * g(node.x);
      if (gz == 0.0) continue;
      for (std::size_t p = first; p < first + 4; ++p) {
        double w = 1.0;
        for (std::size_t q = first; q < first + 4; ++q) {
          if (q != p) w *= (node.x - grid[q]) / (grid[p] - grid[q]);
        }
        c[p] += w * gz;
      }
    }
  }
  return c;
}

inline double dot(const std::vector<double>& c, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
  return s;
}

inline double line_integral(const std::vector<double>& grid, const std::vector<double>& v, const TestFunction& psi) {
  return dot(weighted_rule(grid, [&](double z) { return psi.value(z); }, psi.lo(), psi.hi()), v);
}

inline void check_support(const std::vector<double>& grid, double lo, double hi, const char* what) {
  if (grid.empty() || lo < grid.front() - 1e-12 || hi > grid.back() + 1e-12) {
    throw Error(ErrorCode::SupportClipped, std::string(what) + " support exceeds the grid");
  }
}

}  // namespace detail

struct ViscousResidual {
  double r_u = 0.0;        // sup_t |int (u_t + u u_x) phi|
  double r_rho = 0.0;      // sup_t |int (rho_t + (rho u)_x) phi|
  double r_u_moved = 0.0;  // sup_t |(eps/2) int u phi''|
  double r_rho_moved = 0.0;
  double form_gap = 0.0;   // largest |direct - moved| over the sampled times
  int samples = 0;
};

/// Times at which the direct form is evaluated need both grid neighbours, so
/// grids from `residual_grid` come in triplets t - dt, t, t + dt.
inline ViscousResidual interior_residual_viscous(const ViscousField& field, const TestFunction& phi, double T) {
  detail::check_support(field.grid_x, phi.lo(), phi.hi(), "phi");
  const auto& x = field.grid_x;
  const std::size_t nx = x.size(), nt = field.grid_t.size();
  const auto c0 = detail::weighted_rule(x, [&](double z) { return phi.value(z); }, phi.lo(), phi.hi());
  const auto c1 = detail::weighted_rule(x, [&](double z) { return phi.d1(z); }, phi.lo(), phi.hi());
  const auto c2 = detail::weighted_rule(x, [&](double z) { return phi.d2(z); }, phi.lo(), phi.hi());
  ViscousResidual out;
  std::vector<double> vt(nx), flux(nx);
  for (std::size_t it = 1; it + 1 < nt; ++it) {
    if (field.grid_t[it] > T) break;
    const std::array<double, 3> ts = {field.grid_t[it - 1], field.grid_t[it], field.grid_t[it + 1]};
    // Only centred triplets; the outer members of a triplet are skipped.
    if (std::abs((ts[2] - ts[1]) - (ts[1] - ts[0])) > 1e-9 * (ts[2] - ts[0])) continue;
    const auto w = num::derivative_weights(ts[1], ts);
    const auto& u = field.u[it];
    const auto& rho = field.rho[it];
    // int v_t phi - int flux phi'
    auto direct = [&](const std::vector<std::vector<double>>& v, auto flux_of) {
      for (std::size_t i = 0; i < nx; ++i) {
        vt[i] = w[0] * v[it - 1][i] + w[1] * v[it][i] + w[2] * v[it + 1][i];
        flux[i] = flux_of(i);
      }
      return detail::dot(c0, vt) - detail::dot(c1, flux);
    };
    const double du = direct(field.u, [&](std::size_t i) { return 0.5 * u[i] * u[i]; });
    const double dr = direct(field.rho, [&](std::size_t i) { return rho[i] * u[i]; });
    const double mu = 0.5 * field.epsilon * detail::dot(c2, u);
    const double mr = 0.5 * field.epsilon * detail::dot(c2, rho);
    out.r_u = std::max(out.r_u, std::abs(du));
    out.r_rho = std::max(out.r_rho, std::abs(dr));
    out.r_u_moved = std::max(out.r_u_moved, std::abs(mu));
    out.r_rho_moved = std::max(out.r_rho_moved, std::abs(mr));
    out.form_gap = std::max({out.form_gap, std::abs(du - mu), std::abs(dr - mr)});
    ++out.samples;
  }
  return out;
}

/// 64 sample times in (0, T], each with neighbours at +-dt, and a uniform x grid over [x_lo, x_hi].
inline ViscousGrid residual_grid(double x_lo, double x_hi, int nx, double T, double dt = 1e-3, int samples = 64) {
  if (!(T > 0.0) || !(dt > 0.0) || samples < 1) throw Error(ErrorCode::InvalidArgument, "bad residual grid");
  std::vector<double> times;
  for (int k = 1; k <= samples; ++k) {
    const double t = T * k / samples;
    const double h = std::min(dt, 0.25 * T / samples);
    times.push_back(t - h);
    times.push_back(t);
    times.push_back(t + h);
  }
  return uniform_grid(x_lo, x_hi, nx, times);
}

struct ExactResidual {
  double r_u = 0.0;
  double r_rho = 0.0;
};

/// Distributional residual of a piecewise solution at time t against phi:
/// smooth-region integrals plus jump and atom terms at each front.
inline ExactResidual interior_residual_exact(const PiecewiseSolution& sol, const TestFunction& phi, double t) {
  const TimeSlab& slab = sol.slab_at(t);
  ExactResidual out;
  const std::size_t nf = slab.fronts.size();
  for (std::size_t i = 0; i <= nf; ++i) {
    const double a = std::max(i == 0 ? 0.0 : slab.fronts[i - 1].position(t), phi.lo());
    const double b = std::min(i == nf ? kInfinity : slab.fronts[i].position(t), phi.hi());
    if (!(b > a)) continue;
    const Region& region = slab.regions[i];
    // Regional residuals of u_t + u u_x and rho_t + (rho u)_x.
    auto ru = [&](double x) {
      if (const auto* fan = std::get_if<FanRegion>(&region)) {
        const double u = (x - fan->center_x) / t;
        return (-(x - fan->center_x) / (t * t) + u / t) * phi.value(x);
      }
      return 0.0;
    };
    out.r_u += num::qk15(ru, a, b).value;
  }
  for (const auto& front : slab.fronts) {
    const double s = front.position(t);
    const double w = phi.value(s);
    if (w == 0.0) continue;
    std::size_t k = static_cast<std::size_t>(&front - slab.fronts.data());
    const State l = region_state_at(slab.regions[k], s, t);
    const State r = region_state_at(slab.regions[k + 1], s, t);
    const double v = front.velocity(t);
    const double e_rate = front.atom ? front.atom->rate(t) : 0.0;
    out.r_u += w * (-v * (r.u - l.u) + 0.5 * (r.u * r.u - l.u * l.u));
    out.r_rho += w * (e_rate + v * (l.rho - r.rho) + r.rho * r.u - l.rho * l.u);
  }
  return out;
}

/// sup over `samples` uniform times in [t_lo, t_hi].
inline ExactResidual interior_residual_exact(const PiecewiseSolution& sol, const TestFunction& phi, double t_lo,
                                             double t_hi, int samples = 64) {
  ExactResidual out;
  for (int k = 0; k < samples; ++k) {
    const double t = t_lo + (t_hi - t_lo) * (k + 0.5) / samples;
    const auto r = interior_residual_exact(sol, phi, t);
    out.r_u = std::max(out.r_u, std::abs(r.r_u));
    out.r_rho = std::max(out.r_rho, std::abs(r.r_rho));
  }
  return out;
}

struct DataResidual {
  double initial_u = 0.0;
  double initial_rho = 0.0;
  double boundary_u = 0.0;
  double boundary_rho = 0.0;
};

/// Integrals of (u(x, t0) - u0) psi_x, (rho(x, t0) - rho0) psi_x over the first
/// time line, and (u(x0, t) - u_B) psi_t, (rho(x0, t) - rho_B) psi_t over the first space line.
inline DataResidual data_residual(const ViscousField& field, const StepData& u0, const StepData& rho0,
                                  const std::function<double(double)>& uB, const std::function<double(double)>& rhoB,
                                  const TestFunction& psi_x, const TestFunction& psi_t) {
  detail::check_support(field.grid_x, psi_x.lo(), psi_x.hi(), "psi");
  detail::check_support(field.grid_t, psi_t.lo(), psi_t.hi(), "psi");
  auto raw = [](const std::function<double(double)>& f, const TestFunction& psi, const std::vector<double>& cuts) {
    std::vector<double> c = {psi.lo()};
    for (double k : cuts) {
      if (k > psi.lo() && k < psi.hi()) c.push_back(k);
    }
    c.push_back(psi.hi());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      for (int j = 0; j < 16; ++j) {
        const double a = c[i] + (c[i + 1] - c[i]) * j / 16.0, b = c[i] + (c[i + 1] - c[i]) * (j + 1) / 16.0;
        s += num::qk15([&](double x) { return f(x) * psi.value(x); }, a, b).value;
      }
    }
    return s;
  };
  DataResidual out;
  out.initial_u = detail::line_integral(field.grid_x, field.u.front(), psi_x) -
                  raw([&](double x) { return u0.at(x); }, psi_x, u0.knots);
  out.initial_rho = detail::line_integral(field.grid_x, field.rho.front(), psi_x) -
                    raw([&](double x) { return rho0.at(x); }, psi_x, rho0.knots);
  std::vector<double> ub(field.grid_t.size()), rb(field.grid_t.size());
  for (std::size_t k = 0; k < field.grid_t.size(); ++k) {
    ub[k] = field.u[k].front();
    rb[k] = field.rho[k].front();
  }
  out.boundary_u = detail::line_integral(field.grid_t, ub, psi_t) - raw(uB, psi_t, {});
  out.boundary_rho = detail::line_integral(field.grid_t, rb, psi_t) - raw(rhoB, psi_t, {});
  return out;
}

/// Viscous inputs for a problem: u0 = u_L on (0, x0), u_R beyond (no knot when both sides agree).
inline PrimitiveData viscous_inputs(const ProblemData& d, double eps, bool mollify) {
  const bool single = d.left.u == d.right.u && d.left.rho == d.right.rho;
  const StepData u = single ? StepData{{}, {d.left.u}} : StepData{{d.x0}, {d.left.u, d.right.u}};
  const StepData rho = single ? StepData{{}, {d.left.rho}} : StepData{{d.x0}, {d.left.rho, d.right.rho}};
  return mollify ? mollify_data(u, rho, d.boundary.u, d.boundary.rho, eps)
                 : primitive_data(u, rho, d.boundary.u, d.boundary.rho);
}

/// Largest |u_eps - u| at time index `it` over grid points at least `radius`
/// from every front and from x = 0. Returns nullopt if no point qualifies.
inline std::optional<double> distance_to_exact(const ViscousField& field, std::size_t it, const PiecewiseSolution& sol,
                                               double radius) {
  const double t = field.grid_t.at(it);
  const TimeSlab& slab = sol.slab_at(t);
  std::optional<double> worst;
  for (std::size_t ix = 0; ix < field.grid_x.size(); ++ix) {
    const double x = field.grid_x[ix];
    if (x < radius) continue;
    bool near = false;
    for (const auto& f : slab.fronts) near = near || std::abs(f.position(t) - x) < radius;
    if (near) continue;
    const double e = std::abs(field.u[it][ix] - evaluate(sol, x, t).u);
    worst = std::max(worst.value_or(0.0), e);
  }
  return worst;
}

/// Least-squares slope of log y against log x.
inline double fitted_order(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ResidualReport {
  std::vector<double> eps_values;
  std::vector<double> residual_u;
  std::vector<double> residual_rho;
  std::vector<double> distance_u;
  double fitted_order = 0.0;           // of distance_u against eps
  double fitted_order_residual = 0.0;  // of residual_u against eps
  bool order_fit_skipped = false;      // distances at rounding level
};

struct LadderOptions {
  double T = 1.0;
  double x_hi = 3.0;
  double radius = 0.2;
  int nx = 301;
  double dx = 1e-3;
  double dt = 1e-3;
  bool mollify = false;
};

/// Per eps: residuals over the test functions from the finite-difference
/// solver, and the sup distance to the exact solution at time T.
inline ResidualReport convergence_table(const ProblemData& problem, const std::vector<double>& eps_list,
                                        const std::vector<TestFunction>& phis, const LadderOptions& opt = {}) {
  if (eps_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "convergence_table needs at least three eps");
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::InvalidArgument, "eps list must decrease");
  }
  ProblemData exact_problem = problem;
  exact_problem.horizon = std::max(problem.horizon, opt.T);
  const auto sol = evolve(exact_problem);
  ResidualReport rep;
  rep.eps_values = eps_list;
  const std::size_t n = eps_list.size();
  rep.residual_u.assign(n, 0.0);
  rep.residual_rho.assign(n, 0.0);
  rep.distance_u.assign(n, 0.0);
  num::parallel_for(n, [&](std::size_t k) {
    const double eps = eps_list[k];
    auto grid = residual_grid(opt.x_hi / (opt.nx - 1), opt.x_hi, opt.nx, opt.T, opt.dt);
    const auto field = viscous_fields(solve_pq_fd(viscous_inputs(problem, eps, opt.mollify), eps, grid, {opt.dx, opt.dt}));
    for (const auto& phi : phis) {
      const auto r = interior_residual_viscous(field, phi, opt.T);
      rep.residual_u[k] = std::max(rep.residual_u[k], r.r_u);
      rep.residual_rho[k] = std::max(rep.residual_rho[k], r.r_rho);
    }
    // Distances from the kernel route at time T: it is exact to quadrature accuracy.
    const auto at_T = viscous_fields(
        solve_pq_explicit(viscous_inputs(problem, eps, opt.mollify), eps, uniform_grid(grid.x.front(), opt.x_hi, opt.nx, {opt.T})));
    rep.distance_u[k] = distance_to_exact(at_T, 0, sol, opt.radius).value_or(0.0);
  });
  const double biggest = *std::max_element(rep.distance_u.begin(), rep.distance_u.end());
  rep.order_fit_skipped = biggest < 1e-10;
  if (!rep.order_fit_skipped) rep.fitted_order = fitted_order(rep.eps_values, rep.distance_u);
  if (*std::min_element(rep.residual_u.begin(), rep.residual_u.end()) > 0.0) {
    rep.fitted_order_residual = fitted_order(rep.eps_values, rep.residual_u);
  }
  return rep;
}

/// Atom mass estimated from int rho_eps over [center - half, center + half]
/// minus the regular mass half (rho_left + rho_right), using the primitive R.
inline double window_atom_mass(const ViscousField& field, std::size_t it, double center, double half, double rho_left,
                               double rho_right) {
  const auto& x = field.grid_x;
  if (center - half < x.front() || center + half > x.back()) {
    throw Error(ErrorCode::SupportClipped, "atom window exceeds the grid");
  }
  auto R = [&](double z) {
    std::size_t i = std::upper_bound(x.begin(), x.end(), z) - x.begin();
    i = std::clamp<std::size_t>(i, 2, x.size() - 2);
    double s = 0.0;
    for (std::size_t a = i - 2; a < i + 2; ++a) {
      double w = 1.0;
      for (std::size_t b = i - 2; b < i + 2; ++b) {
        if (b != a) w *= (z - x[b]) / (x[a] - x[b]);
      }
      s += w * field.R[it][a];
    }
    return s;
  };
  return R(center + half) - R(center - half) - half * (rho_left + rho_right);
}

namespace detail {

/// Times in (lo, hi) where the front crosses x = X.
inline std::vector<double> crossing_times(const FrontCurve& f, double X, double lo, double hi) {
  const auto c = f.coefficients();
  std::vector<double> roots;
  const double A = c.a, B = c.b, C = c.d - X;
  auto push = [&](double tau) {
    if (tau > 0.0) {
      const double t = tau * tau;
      if (t > lo && t < hi) roots.push_back(t);
    }
  };
  if (A == 0.0) {
    if (B != 0.0) push(-C / B);
  } else {
    const double disc = B * B - 4 * A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (B + (B >= 0 ? sq : -sq));
      if (qq != 0.0) push(C / qq);
      push(qq / A);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline double window_mass(const PiecewiseSolution& sol, double x_max, double t) {
  const TimeSlab& slab = sol.slab_at(t);
  double m = 0.0;
  const std::size_t nf = slab.fronts.size();
  for (std::size_t i = 0; i <= nf; ++i) {
    const double a = i == 0 ? 0.0 : std::max(0.0, slab.fronts[i - 1].position(t));
    const double b = std::min(i == nf ? kInfinity : slab.fronts[i].position(t), x_max);
    if (b > a) m += region_state_at(slab.regions[i], 0.5 * (a + b), t).rho * (b - a);
  }
  for (const auto& f : slab.fronts) {
    const double s = f.position(t);
    if (s > 0.0 && s <= x_max) m += f.strength(t);
  }
  return m;
}

}  // namespace detail

/// Conservation defect of rho over [0, x_max] x [t_a, t_b]; exited atom mass is
/// counted as outflow unless `count_exits` is false.
inline double mass_balance(const PiecewiseSolution& sol, double x_max, double t_a, double t_b,
                           bool count_exits = true) {
  if (!(t_a < t_b) || t_b > sol.horizon || !(t_a >= 0.0) || !(x_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mass_balance needs 0 <= t_a < t_b <= horizon and x_max > 0");
  }
  double defect = detail::window_mass(sol, x_max, t_b) - detail::window_mass(sol, x_max, t_a);
  for (const auto& slab : sol.slabs) {
    const double lo = std::max(slab.t_lo, t_a), hi = std::min(slab.t_hi, t_b);
    if (!(hi > lo)) continue;
    // Inflow through x = 0+: region 0 is constant in time inside a slab (fans carry no density).
    const State in = region_state_at(slab.regions.front(), 0.0, 0.5 * (lo + hi));
    defect -= in.rho * in.u * (hi - lo);
    // Outflow through x_max: the adjacent region changes only where fronts cross.
    std::vector<double> cuts = {lo, hi};
    for (const auto& f : slab.fronts) {
      for (double tc : detail::crossing_times(f, x_max, lo, hi)) {
        cuts.push_back(tc);
        if (f.atom) defect += (f.velocity(tc) > 0.0 ? 1.0 : -1.0) * f.strength(tc);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double tm = 0.5 * (cuts[k] + cuts[k + 1]);
      const State s = region_state_at(slab.regions[region_index(slab, x_max, tm)], x_max, tm);
      defect += s.rho * s.u * (cuts[k + 1] - cuts[k]);
    }
  }
  if (count_exits) {
    for (const auto& e : sol.exits) {
      if (e.time > t_a && e.time <= t_b) defect += e.mass;
    }
  }
  return defect;
}

}  // namespace pgd
