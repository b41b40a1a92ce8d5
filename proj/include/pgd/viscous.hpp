#pragma once

// Viscous approximation through the Hopf-Cole substitution
//
//   u = -eps p_x / p,   rho = (q / p)_x,
//
// where p and q solve p_t = (eps/2) p_xx, q_t = (eps/2) q_xx on x > 0 with
//
//   eps p_x + u_B p = 0,   eps q_x + u_B q = eps p rho_B   at x = 0,
//   p(x, 0) = exp(-U0(x)/eps),   q(x, 0) = R0(x) exp(-U0(x)/eps).
//
// Two routes: the Robin heat kernel (constant u_B) and finite differences (TR-BDF2).

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "pgd/error.hpp"
#include "pgd/numerics.hpp"

namespace pgd {

/// Piecewise-constant data: values[k] on (knots[k-1], knots[k]), values.back() beyond the last knot.
struct StepData {
  std::vector<double> knots;
  std::vector<double> values;

  double at(double x) const {
    std::size_t k = 0;
    while (k < knots.size() && x >= knots[k]) ++k;
    return values[k];
  }
};

/// A primitive F(x) = int_0^x f together with the features quadrature needs.
struct Primitive {
  std::function<double(double)> value;
  std::vector<double> breaks;  // points where F'' is not small
  std::vector<double> slopes;  // values F' takes
  double far_from = 0.0;       // beyond this, F(x) = far_slope x + far_offset
  double far_slope = 0.0;
  double far_offset = 0.0;
};

struct PrimitiveData {
  Primitive U0;
  Primitive R0;
  double uB = 0.0;
  std::function<double(double)> uB_of_t;  // FD path only; empty means constant uB
  std::function<double(double)> rhoB;

  double boundary_velocity(double t) const { return uB_of_t ? uB_of_t(t) : uB; }
};

namespace detail {

inline void check_steps(const StepData& s) {
  if (s.values.size() != s.knots.size() + 1) throw Error(ErrorCode::InvalidArgument, "step data needs knots + 1 values");
  for (std::size_t i = 0; i < s.knots.size(); ++i) {
    if (!(s.knots[i] > 0.0) || (i > 0 && !(s.knots[i] > s.knots[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "step knots must be positive and increasing");
    }
  }
}

}  // namespace detail

inline Primitive primitive_of(const StepData& s) {
  detail::check_steps(s);
  Primitive p;
  std::vector<double> base(s.knots.size() + 1, 0.0);
  for (std::size_t k = 0; k < s.knots.size(); ++k) {
    const double lo = k == 0 ? 0.0 : s.knots[k - 1];
    base[k + 1] = base[k] + s.values[k] * (s.knots[k] - lo);
  }
  p.value = [s, base](double x) {
    std::size_t k = 0;
    while (k < s.knots.size() && x >= s.knots[k]) ++k;
    const double lo = k == 0 ? 0.0 : s.knots[k - 1];
    return base[k] + s.values[k] * (x - lo);
  };
  p.breaks = s.knots;
  p.slopes = s.values;
  p.far_from = s.knots.empty() ? 0.0 : s.knots.back();
  p.far_slope = s.values.back();
  p.far_offset = base.back() - s.values.back() * p.far_from;
  return p;
}

inline PrimitiveData primitive_data(const StepData& u0, const StepData& rho0, double uB, double rhoB) {
  PrimitiveData d;
  d.U0 = primitive_of(u0);
  d.R0 = primitive_of(rho0);
  d.uB = uB;
  d.rhoB = [rhoB](double) { return rhoB; };
  return d;
}

namespace detail {

/// Standard bump mollifier on [-1, 1] with its first two antiderivatives, tabulated once.
class Mollifier {
 public:
  static const Mollifier& instance() {
    static const Mollifier m;
    return m;
  }

  double eta(double s) const { return std::abs(s) < 1.0 ? norm_ * std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

  /// int_{-inf}^s eta.
  double H(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return hermite(s, h_, [this](double v) { return eta(v); });
  }

  /// int_{-inf}^s H; equals s for s >= 1.
  double Phi(double s) const {
    if (s <= -1.0) return 0.0;
    if (s >= 1.0) return s;
    return hermite(s, phi_, [this](double v) { return H_node(v); });
  }

 private:
  static constexpr int kCells = 4000;

  Mollifier() {
    auto raw = [](double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; };
    const double step = 2.0 / kCells;
    double total = 0.0;
    for (int i = 0; i < kCells; ++i) total += num::qk15(raw, -1.0 + i * step, -1.0 + (i + 1) * step).value;
    norm_ = 1.0 / total;
    h_.assign(kCells + 1, 0.0);
    phi_.assign(kCells + 1, 0.0);
    for (int i = 0; i < kCells; ++i) {
      const double a = -1.0 + i * step, b = a + step;
      h_[i + 1] = h_[i] + num::qk15([&](double r) { return eta(r); }, a, b).value;
      // int_a^b H = step H(a) + int_a^b (b - r) eta(r) dr
      phi_[i + 1] = phi_[i] + step * h_[i] + num::qk15([&](double r) { return (b - r) * eta(r); }, a, b).value;
    }
  }

  double H_node(double s) const { return H(s); }

  template <class Deriv>
  double hermite(double s, const std::vector<double>& table, Deriv deriv) const {
    const double step = 2.0 / kCells;
    int i = std::clamp(static_cast<int>((s + 1.0) / step), 0, kCells - 1);
    const double a = -1.0 + i * step;
    const double u = (s - a) / step;
    const double f0 = table[i], f1 = table[i + 1];
    const double d0 = deriv(a) * step, d1 = deriv(a + step) * step;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * f0 + (u3 - 2 * u2 + u) * d0 + (-2 * u3 + 3 * u2) * f1 + (u3 - u2) * d1;
  }

  double norm_ = 1.0;
  std::vector<double> h_;
  std::vector<double> phi_;
};

/// Primitive of (f chi_[2eps, inf)) * eta_eps for step data f.
inline Primitive mollified_primitive(const StepData& s, double eps) {
  detail::check_steps(s);
  struct Piece {
    double lo, hi, c;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    double lo = k == 0 ? 0.0 : s.knots[k - 1];
    const double hi = k < s.knots.size() ? s.knots[k] : std::numeric_limits<double>::infinity();
    lo = std::max(lo, 2.0 * eps);
    if (hi > lo && s.values[k] != 0.0) pieces.push_back({lo, hi, s.values[k]});
  }
  const Mollifier& m = Mollifier::instance();
  Primitive p;
  p.value = [pieces, eps, &m](double x) {
    double v = 0.0;
    for (const auto& pc : pieces) {
      double term = m.Phi((x - pc.lo) / eps) - m.Phi(-pc.lo / eps);
      if (std::isfinite(pc.hi)) term -= m.Phi((x - pc.hi) / eps) - m.Phi(-pc.hi / eps);
      v += pc.c * eps * term;
    }
    return v;
  };
  for (const auto& pc : pieces) {
    p.breaks.push_back(pc.lo - eps);
    p.breaks.push_back(pc.lo + eps);
    if (std::isfinite(pc.hi)) {
      p.breaks.push_back(pc.hi - eps);
      p.breaks.push_back(pc.hi + eps);
    }
  }
  std::erase_if(p.breaks, [](double b) { return b <= 0.0; });
  std::sort(p.breaks.begin(), p.breaks.end());
  p.slopes = s.values;
  p.slopes.push_back(0.0);
  p.far_from = p.breaks.empty() ? 0.0 : p.breaks.back();
  p.far_slope = s.values.back();
  p.far_offset = p.value(p.far_from + 1.0) - p.far_slope * (p.far_from + 1.0);
  return p;
}

}  // namespace detail

/// Cuts the data off on [0, 2 eps) and convolves with the bump at scale eps.
/// Boundary density is mollified in time the same way; u_B stays constant so
/// that the kernel route remains available.
inline PrimitiveData mollify_data(const StepData& u0, const StepData& rho0, double uB, double rhoB, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  PrimitiveData d;
  d.U0 = detail::mollified_primitive(u0, eps);
  d.R0 = detail::mollified_primitive(rho0, eps);
  d.uB = uB;
  d.rhoB = [rhoB, eps](double t) { return rhoB * detail::Mollifier::instance().H((t - 2.0 * eps) / eps); };
  return d;
}

namespace detail {

/// log of (u_B/eps) exp((-a u_B + t u_B^2/2)/eps) erfc((a - t u_B)/sqrt(2 t eps)), without the sign of u_B.
inline double log_robin_term(double a, double t, double eps, double uB) {
  const double m = (a - t * uB) / std::sqrt(2.0 * t * eps);
  const double lead = std::log(std::abs(uB) / eps);
  if (m > 0.0) return lead - a * a / (2.0 * t * eps) + std::log(num::erfcx(m));
  return lead + (-a * uB + 0.5 * t * uB * uB) / eps + num::log_erfc(m);
}

inline int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace detail

/// Robin heat kernel in signed-log form.
inline num::SignedLog log_heat_kernel_K(double x, double y, double t, double eps, double uB) {
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * t * eps);
  num::LogSum s;
  s.add(norm - (x - y) * (x - y) / (2.0 * t * eps), 1);
  s.add(norm - (x + y) * (x + y) / (2.0 * t * eps), 1);
  if (uB != 0.0) s.add(detail::log_robin_term(x + y, t, eps, uB), detail::sgn(uB));
  return s.result();
}

inline double heat_kernel_K(double x, double y, double t, double eps, double uB) {
  if (!(t > 0.0) || !(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat_kernel_K needs t > 0 and eps > 0");
  return log_heat_kernel_K(x, y, t, eps, uB).value();
}

/// dK/dx in signed-log form.
inline num::SignedLog log_heat_kernel_Kx(double x, double y, double t, double eps, double uB) {
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * t * eps);
  const double te = t * eps;
  num::LogSum s;
  if (x != y) s.add(norm - (x - y) * (x - y) / (2.0 * te) + std::log(std::abs(x - y) / te), -detail::sgn(x - y));
  if (x + y != 0.0) s.add(norm - (x + y) * (x + y) / (2.0 * te) + std::log((x + y) / te), -1);
  if (uB != 0.0) {
    const double a = x + y;
    const double lz = detail::log_robin_term(a, t, eps, uB);
    s.add(lz + std::log(std::abs(uB) / eps), -1);
    s.add(std::log(std::abs(uB) / eps) + std::log(2.0 / std::sqrt(std::numbers::pi)) - 0.5 * std::log(2.0 * te) -
              a * a / (2.0 * te),
          -detail::sgn(uB));
  }
  return s.result();
}

struct ViscousGrid {
  std::vector<double> x;
  std::vector<double> t;
};

/// p and q on a grid, stored as log p, p_x / p and R = q / p.
struct PQField {
  std::vector<double> grid_x;
  std::vector<double> grid_t;
  double epsilon = 0.0;
  std::vector<std::vector<double>> log_p;
  std::vector<std::vector<double>> dlogp_dx;
  std::vector<std::vector<double>> R;
};

struct ViscousField {
  std::vector<double> grid_x;
  std::vector<double> grid_t;
  std::vector<std::vector<double>> u;    // [t][x]
  std::vector<std::vector<double>> rho;  // [t][x]
  std::vector<std::vector<double>> R;    // q / p, the primitive of rho
  double epsilon = 0.0;
};

namespace detail {

inline void check_grid(const ViscousGrid& g) {
  if (g.x.empty() || g.t.empty()) throw Error(ErrorCode::InvalidArgument, "empty viscous grid");
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (!(g.x[i] > 0.0) || (i > 0 && !(g.x[i] > g.x[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "grid_x must be positive and strictly increasing");
    }
  }
  for (std::size_t i = 0; i < g.t.size(); ++i) {
    if (!(g.t[i] > 0.0) || (i > 0 && !(g.t[i] > g.t[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "grid_t must be positive and strictly increasing");
    }
  }
}

inline constexpr double kQuadratureFailure = 1e-8;
inline constexpr double kRefineTarget = 1e-10;

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct KernelIntegrator {
  const PrimitiveData& data;
  double eps;

  std::vector<double> cuts(double x, double t) const {
    const double sd = std::sqrt(t * eps);
    double top = x;
    std::vector<double> c = {0.0, x};
    for (const auto* prim : {&data.U0, &data.R0}) {
      for (double b : prim->breaks) {
        c.push_back(b);
        top = std::max(top, b);
      }
    }
    for (double s : data.U0.slopes) {
      const double y = x - s * t;
      if (y > 0.0) {
        c.push_back(y);
        top = std::max(top, y);
      }
    }
    top += 15.0 * sd;
    c.push_back(top);
    std::erase_if(c, [&](double v) { return v < 0.0 || v > top; });
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  num::LogIntegral integrate(const std::function<num::SignedLog(double)>& f, double x, double t) const {
    auto r = num::integrate_log(f, cuts(x, t), 0.5 * std::sqrt(t * eps));
    if (r.rel_error > kQuadratureFailure) {
      throw Error(ErrorCode::QuadratureFailure, "kernel quadrature error estimate " + sci(r.rel_error));
    }
    return r;
  }

  num::SignedLog log_p(double x, double t) const {
    return integrate([&](double y) {
      auto k = log_heat_kernel_K(x, y, t, eps, data.uB);
      k.log_abs -= data.U0.value(y) / eps;
      return k;
    }, x, t).value;
  }

  num::SignedLog log_px(double x, double t) const {
    return integrate([&](double y) {
      auto k = log_heat_kernel_Kx(x, y, t, eps, data.uB);
      k.log_abs -= data.U0.value(y) / eps;
      return k;
    }, x, t).value;
  }

  num::SignedLog log_q_initial(double x, double t) const {
    return integrate([&](double y) {
      const double r0 = data.R0.value(y);
      if (r0 == 0.0) return num::SignedLog{};
      auto k = log_heat_kernel_K(x, y, t, eps, data.uB);
      k.log_abs += std::log(std::abs(r0)) - data.U0.value(y) / eps;
      k.sign *= detail::sgn(r0);
      return k;
    }, x, t).value;
  }
};

/// int_0^t K(x, 0, t - tau) p(0, tau) rho_B(tau) dtau for every x, with
/// tau = t - sigma^2. The sigma panels are refined jointly for all x so that
/// the expensive p(0, tau) values are shared.
inline std::vector<num::SignedLog> boundary_flux(const KernelIntegrator& ki, double t,
                                                 const std::vector<double>& xs) {
  const PrimitiveData& data = ki.data;
  const double eps = ki.eps;
  struct Panel {
    double a, b;
    std::array<num::RuleNode, 15> nodes;
    std::array<num::SignedLog, 15> g;  // p(0, tau) rho_B(tau) 2 sigma
  };
  auto make = [&](double a, double b) {
    Panel pn{a, b, num::qk15_nodes(a, b), {}};
    return pn;
  };
  auto fill = [&](std::vector<Panel>& ps) {
    std::vector<std::pair<std::size_t, int>> todo;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (int k = 0; k < 15; ++k) todo.push_back({i, k});
    }
    num::parallel_for(todo.size(), [&](std::size_t j) {
      auto& pn = ps[todo[j].first];
      const int k = todo[j].second;
      const double sigma = pn.nodes[k].x;
      const double tau = t - sigma * sigma;
      const double rb = data.rhoB(tau);
      if (rb == 0.0 || !(tau > 0.0)) return;
      pn.g[k] = ki.log_p(0.0, tau) * num::SignedLog::from(rb * 2.0 * sigma);
    });
  };
  const double top = std::sqrt(t);
  const int uniform = 16;
  std::vector<double> edges = {0.0};
  for (int k = 20; k >= 1; --k) edges.push_back(top / uniform * std::ldexp(1.0, -k));
  for (int i = 1; i <= uniform; ++i) edges.push_back(i == uniform ? top : top * i / uniform);
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) panels.push_back(make(edges[i], edges[i + 1]));
  fill(panels);

  std::vector<num::SignedLog> out(xs.size());
  for (int round = 0;; ++round) {
    std::vector<std::atomic<char>> split(panels.size());
    std::vector<double> worst(xs.size(), 0.0);
    num::parallel_for(xs.size(), [&](std::size_t ix) {
      const double x = xs[ix];
      std::vector<std::array<num::SignedLog, 15>> terms(panels.size());
      double big = num::kNegInf;
      for (std::size_t i = 0; i < panels.size(); ++i) {
        for (int k = 0; k < 15; ++k) {
          if (panels[i].g[k].sign == 0) continue;
          const double sigma = panels[i].nodes[k].x;
          terms[i][k] = panels[i].g[k] * log_heat_kernel_K(x, 0.0, sigma * sigma, eps, data.uB);
          big = std::max(big, terms[i][k].log_abs);
        }
      }
      if (big == num::kNegInf) {
        out[ix] = {};
        return;
      }
      double total = 0.0, absolute = 0.0;
      std::vector<double> perr(panels.size(), 0.0);
      for (std::size_t i = 0; i < panels.size(); ++i) {
        double sk = 0.0, sg = 0.0;
        for (int k = 0; k < 15; ++k) {
          if (terms[i][k].sign == 0) continue;
          const double v = terms[i][k].sign * std::exp(terms[i][k].log_abs - big);
          sk += panels[i].nodes[k].w_kronrod * v;
          sg += panels[i].nodes[k].w_gauss * v;
          absolute += panels[i].nodes[k].w_kronrod * std::abs(v);
        }
        total += sk;
        perr[i] = std::abs(sk - sg);
      }
      double err = 0.0;
      for (double e : perr) err += e;
      worst[ix] = absolute > 0.0 ? err / absolute : 0.0;
      out[ix] = total == 0.0 ? num::SignedLog{} : num::SignedLog{big + std::log(std::abs(total)), total > 0 ? 1 : -1};
      if (worst[ix] > kRefineTarget) {
        const double cut = kRefineTarget * absolute / static_cast<double>(panels.size());
        for (std::size_t i = 0; i < panels.size(); ++i) {
          if (perr[i] > cut) split[i].store(1, std::memory_order_relaxed);
        }
      }
    });
    const double w = *std::max_element(worst.begin(), worst.end());
    if (w <= kRefineTarget) return out;
    if (round == 24 || panels.size() > 30000) {
      if (w > kQuadratureFailure) {
        throw Error(ErrorCode::QuadratureFailure, "boundary-flux quadrature error estimate " + sci(w));
      }
      return out;
    }
    std::vector<Panel> next, fresh;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) continue;
      const double mid = 0.5 * (panels[i].a + panels[i].b);
      fresh.push_back(make(panels[i].a, mid));
      fresh.push_back(make(mid, panels[i].b));
    }
    fill(fresh);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) next.push_back(panels[i]);
    }
    for (auto& pn : fresh) next.push_back(pn);
    panels = std::move(next);
  }
}

}  // namespace detail

/// Kernel route; requires constant u_B.
inline PQField solve_pq_explicit(const PrimitiveData& data, double eps, const ViscousGrid& grid) {
  if (data.uB_of_t) throw Error(ErrorCode::InvalidArgument, "kernel route needs constant u_B");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  detail::check_grid(grid);
  PQField out;
  out.grid_x = grid.x;
  out.grid_t = grid.t;
  out.epsilon = eps;
  const std::size_t nx = grid.x.size(), nt = grid.t.size();
  out.log_p.assign(nt, std::vector<double>(nx));
  out.dlogp_dx = out.R = out.log_p;
  detail::KernelIntegrator ki{data, eps};
  for (std::size_t it = 0; it < nt; ++it) {
    const double t = grid.t[it];
    const auto flux = detail::boundary_flux(ki, t, grid.x);
    num::parallel_for(nx, [&](std::size_t ix) {
      const double x = grid.x[ix];
      const auto lp = ki.log_p(x, t);
      if (lp.sign <= 0) throw Error(ErrorCode::NonpositiveP, "p <= 0 at x = " + std::to_string(x));
      const auto lpx = ki.log_px(x, t);
      const auto boundary_term = flux[ix] * num::SignedLog{std::log(0.5 * eps), -1};
      const auto lq = num::log_add(ki.log_q_initial(x, t), boundary_term);
      out.log_p[it][ix] = lp.log_abs;
      out.dlogp_dx[it][ix] = lpx.sign == 0 ? 0.0 : lpx.sign * std::exp(lpx.log_abs - lp.log_abs);
      out.R[it][ix] = lq.sign == 0 ? 0.0 : lq.sign * std::exp(lq.log_abs - lp.log_abs);
    });
  }
  return out;
}

struct FdOptions {
  double dx = 1e-3;
  double dt = 1e-3;
  double x_max = 0.0;  // 0 picks the default truncation
};

namespace detail {

/// Cubic Lagrange interpolation on a uniform grid starting at 0.
inline double interpolate_uniform(const std::vector<double>& f, double dx, double x) {
  const int n = static_cast<int>(f.size());
  int i = static_cast<int>(std::floor(x / dx)) - 1;
  i = std::clamp(i, 0, n - 4);
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (x - (i + b) * dx) / ((a - b) * dx);
    }
    s += w * f[i + a];
  }
  return s;
}

}  // namespace detail

/// TR-BDF2 finite differences in the gauge above; u_B may depend on t.
inline PQField solve_pq_fd(const PrimitiveData& data, double eps, const ViscousGrid& grid, const FdOptions& opt = {}) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  if (!(opt.dx > 0.0) || !(opt.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dx and dt must be > 0");
  detail::check_grid(grid);
  const double T = grid.t.back();
  double speed = std::abs(data.uB);
  for (double s : data.U0.slopes) speed = std::max(speed, std::abs(s));
  if (data.uB_of_t) {
    for (int k = 0; k <= 100; ++k) speed = std::max(speed, std::abs(data.uB_of_t(T * k / 100.0)));
  }
  double x_max = opt.x_max;
  if (x_max <= 0.0) {
    x_max = speed * T + std::max(data.U0.far_from, data.R0.far_from) + 10.0 * std::sqrt(eps * T);
    x_max = std::max(x_max, grid.x.back() + 10.0 * std::sqrt(eps * T));
  }
  const int n = static_cast<int>(std::ceil(x_max / opt.dx));
  const double dx = opt.dx;
  const double D = 0.5 * eps;
  std::vector<double> xs(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = i * dx;
  // Gauge p = E P, q = E Q with E = exp((-c x + c^2 t/2)/eps) an exact heat
  // solution, c the far-field velocity. Then P_t = (eps/2) P_xx - c P_x and
  // eps P_x + (u_B - c) P = 0, eps Q_x + (u_B - c) Q = eps P rho_B, which keeps
  // P within range where p itself would under- or overflow.
  const Primitive& U = data.U0;
  const Primitive& R0 = data.R0;
  const double c = U.far_slope;
  auto log_E = [&](double x, double t) { return (-c * x + 0.5 * c * c * t) / eps; };
  double shift = -std::numeric_limits<double>::infinity();
  for (double x : xs) shift = std::max(shift, -U.value(x) / eps - log_E(x, 0.0));
  std::vector<double> p(n + 1), q(n + 1);
  for (int i = 0; i <= n; ++i) {
    p[i] = std::exp(-U.value(xs[i]) / eps - log_E(xs[i], 0.0) - shift);
    q[i] = R0.value(xs[i]) * p[i];
  }
  // Beyond the last kink p = exp((-c X - d_U + c^2 t/2)/eps), so P is constant there.
  const double p_far = std::exp(-U.far_offset / eps - shift);
  auto q_far = [&](double t) { return (R0.far_slope * (xs[n] - c * t) + R0.far_offset) * p_far; };
  std::vector<double> sub(n + 1), diag(n + 1), sup(n + 1), rhs(n + 1);
  const double dd = D / (dx * dx), aa = c / (2.0 * dx);
  // L f = M_k f + source; row 0 eliminates the ghost value f_{-1} = f_1 + 2 dx k f_0 - 2 dx src.
  auto apply = [&](const std::vector<double>& f, int i, double k, double src) {
    if (i == 0) return dd * (2.0 * f[1] - (2.0 - 2.0 * dx * k) * f[0] - 2.0 * dx * src) + c * k * f[0] - c * src;
    return dd * (f[i - 1] - 2.0 * f[i] + f[i + 1]) - aa * (f[i + 1] - f[i - 1]);
  };
  // Solves (I - a L) f = b in place of b (b is rhs).
  auto implicit = [&](double a, double k, double src, double far) {
    diag[0] = 1.0 - a * (-(2.0 - 2.0 * dx * k) * dd + c * k);
    sup[0] = -a * 2.0 * dd;
    rhs[0] += a * (-2.0 * dx * dd * src - c * src);
    for (int i = 1; i < n; ++i) {
      sub[i] = -a * (dd + aa);
      diag[i] = 1.0 + a * 2.0 * dd;
      sup[i] = -a * (dd - aa);
    }
    sub[n] = 0.0;
    diag[n] = 1.0;
    sup[n] = 0.0;
    rhs[n] = far;
    num::solve_tridiagonal(sub, diag, sup, rhs);
  };
  // TR-BDF2: L-stable, so the stiff boundary mode switched on at t = 0 is
  // damped instead of ringing as it would under Crank-Nicolson.
  const double gamma = 2.0 - std::sqrt(2.0);
  const double w_new = 1.0 / (gamma * (2.0 - gamma)), w_old = (1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));
  std::vector<double> stage(n + 1);
  auto advance = [&](std::vector<double>& f, double t0, double h, double src0, double src_g, double src1,
                     double far_g, double far1) {
    const double tg = t0 + gamma * h, t1 = t0 + h;
    const double k0 = (data.boundary_velocity(t0) - c) / eps;
    const double kg = (data.boundary_velocity(tg) - c) / eps;
    const double k1 = (data.boundary_velocity(t1) - c) / eps;
    for (int i = 0; i < n; ++i) rhs[i] = f[i] + 0.5 * gamma * h * apply(f, i, i == 0 ? k0 : 0.0, src0);
    implicit(0.5 * gamma * h, kg, src_g, far_g);
    stage = rhs;
    for (int i = 0; i < n; ++i) rhs[i] = w_new * stage[i] - w_old * f[i];
    implicit(h * (1.0 - gamma) / (2.0 - gamma), k1, src1, far1);
    f.swap(rhs);
    return stage[0];
  };
  auto step = [&](double t0, double h) {
    const double tg = t0 + gamma * h, t1 = t0 + h;
    const double p0_old = p[0];
    const double p0_g = advance(p, t0, h, 0.0, 0.0, 0.0, p_far, p_far);
    advance(q, t0, h, p0_old * data.rhoB(t0), p0_g * data.rhoB(tg), p[0] * data.rhoB(t1), q_far(tg), q_far(t1));
  };
  PQField out;
  out.grid_x = grid.x;
  out.grid_t = grid.t;
  out.epsilon = eps;
  double t = 0.0;
  for (double target : grid.t) {
    while (t < target - 1e-12 * target) {
      const double h = std::min(opt.dt, target - t);
      step(t, h);
      t += h;
    }
    t = target;
    std::vector<double> logp(n + 1), dlogp(n + 1), ratio(n + 1);
    for (int i = 0; i <= n; ++i) {
      if (!(p[i] > 0.0)) throw Error(ErrorCode::NonpositiveP, "finite-difference p <= 0 at x = " + std::to_string(xs[i]));
      logp[i] = std::log(p[i]);
      ratio[i] = q[i] / p[i];
    }
    // Differences of log P, then add back the gauge.
    for (int i = 1; i < n; ++i) dlogp[i] = (logp[i + 1] - logp[i - 1]) / (2.0 * dx) - c / eps;
    dlogp[0] = -data.boundary_velocity(t) / eps;
    dlogp[n] = (logp[n] - logp[n - 1]) / dx - c / eps;
    for (int i = 0; i <= n; ++i) logp[i] += shift + log_E(xs[i], t);
    std::vector<double> row_lp, row_d, row_r;
    for (double x : grid.x) {
      if (x > xs[n]) throw Error(ErrorCode::InvalidArgument, "grid_x beyond the truncated domain");
      row_lp.push_back(detail::interpolate_uniform(logp, dx, x));
      row_d.push_back(detail::interpolate_uniform(dlogp, dx, x));
      row_r.push_back(detail::interpolate_uniform(ratio, dx, x));
    }
    out.log_p.push_back(std::move(row_lp));
    out.dlogp_dx.push_back(std::move(row_d));
    out.R.push_back(std::move(row_r));
  }
  return out;
}

inline ViscousField viscous_fields(const PQField& pq) {
  ViscousField f;
  f.grid_x = pq.grid_x;
  f.grid_t = pq.grid_t;
  f.epsilon = pq.epsilon;
  for (std::size_t it = 0; it < pq.grid_t.size(); ++it) {
    std::vector<double> u(pq.grid_x.size());
    for (std::size_t ix = 0; ix < u.size(); ++ix) {
      if (!std::isfinite(pq.log_p[it][ix])) throw Error(ErrorCode::NonpositiveP, "p not positive and finite");
      u[ix] = -pq.epsilon * pq.dlogp_dx[it][ix];
    }
    f.u.push_back(std::move(u));
    f.R.push_back(pq.R[it]);
    f.rho.push_back(pq.grid_x.size() >= 2 ? num::derivative(pq.grid_x, pq.R[it])
                                          : std::vector<double>(pq.grid_x.size(), 0.0));
  }
  return f;
}

/// Header row x,t,u,rho then one row per grid point at 17 significant digits.
inline void write_csv(std::ostream& os, const ViscousField& f) {
  char buf[128];
  os << "x,t,u,rho\n";
  for (std::size_t it = 0; it < f.grid_t.size(); ++it) {
    for (std::size_t ix = 0; ix < f.grid_x.size(); ++ix) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", f.grid_x[ix], f.grid_t[it], f.u[it][ix],
                    f.rho[it][ix]);
      os << buf;
    }
  }
}

inline ViscousGrid uniform_grid(double x_lo, double x_hi, int nx, std::vector<double> times) {
  ViscousGrid g;
  for (int i = 0; i < nx; ++i) g.x.push_back(x_lo + (x_hi - x_lo) * i / (nx - 1));
  g.t = std::move(times);
  return g;
}

}  // namespace pgd
