#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pgd/error.hpp"

namespace pgd::num {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and the center.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleNode {
  double x;
  double w_kronrod;
  double w_gauss;
};

/// The 15 nodes mapped to [a, b] with both weight sets.
inline std::array<RuleNode, 15> qk15_nodes(double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<RuleNode, 15> out{};
  int k = 0;
  for (int j = 0; j < 7; ++j) {
    const double wg = (j % 2 == 1) ? kGaussWeights[j / 2] : 0.0;
    out[k++] = {c - h * kKronrodNodes[j], h * kKronrodWeights[j], h * wg};
    out[k++] = {c + h * kKronrodNodes[j], h * kKronrodWeights[j], h * wg};
  }
  out[k] = {c, h * kKronrodWeights[7], h * kGaussWeights[3]};
  return out;
}

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

inline QuadResult qk15(const std::function<double(double)>& f, double a, double b) {
  double k = 0.0, g = 0.0;
  for (const auto& n : qk15_nodes(a, b)) {
    const double v = f(n.x);
    k += n.w_kronrod * v;
    g += n.w_gauss * v;
  }
  return {k, std::abs(k - g)};
}

/// A real number stored as sign * exp(log_abs).
struct SignedLog {
  double log_abs = kNegInf;
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  static SignedLog from(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
  }
};

inline SignedLog operator*(SignedLog a, SignedLog b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

/// Running sum of signed exponentials with the largest magnitude factored out.
class LogSum {
 public:
  void add(double log_abs, int sign) {
    if (sign == 0 || log_abs == kNegInf) return;
    if (log_abs > max_) {
      sum_ = (max_ == kNegInf ? 0.0 : sum_ * std::exp(max_ - log_abs));
      max_ = log_abs;
    }
    sum_ += sign * std::exp(log_abs - max_);
  }
  void add(SignedLog v) { add(v.log_abs, v.sign); }

  SignedLog result() const {
    if (max_ == kNegInf || sum_ == 0.0) return {};
    return {max_ + std::log(std::abs(sum_)), sum_ > 0.0 ? 1 : -1};
  }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

inline SignedLog log_add(SignedLog a, SignedLog b) {
  LogSum s;
  s.add(a);
  s.add(b);
  return s.result();
}

/// exp(m^2) erfc(m), accurate for all m where it is finite.
inline double erfcx(double m) {
  if (m < 20.0) return std::erfc(m) * std::exp(m * m);
  // Continued fraction erfcx(m) = (1/sqrt(pi)) / (m + (1/2)/(m + 1/(m + (3/2)/(m + ...)))).
  double f = m;
  for (int n = 60; n >= 1; --n) f = m + 0.5 * n / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

inline double log_erfc(double m) {
  if (m < 5.0) return std::log(std::erfc(m));
  return std::log(erfcx(m)) - m * m;
}

struct LogIntegral {
  SignedLog value;
  double rel_error = 0.0;  // error estimate over the integral of |f|
  int panels = 0;
};

/// Adaptive composite qk15 for an integrand given in signed-log form. Panels
/// start at the cuts (sorted, first and last are the endpoints) graded from
/// width h_max at each cut, then bisected where the Kronrod/Gauss gap dominates.
inline LogIntegral integrate_log(const std::function<SignedLog(double)>& f, const std::vector<double>& cuts,
                                 double h_max, double tol = 1e-11, int max_panels = 20000) {
  struct Panel {
    double a, b;
    double m = kNegInf;  // log scale
    double sk = 0.0, sg = 0.0, sabs = 0.0;
  };
  auto eval = [&](Panel& p) {
    std::array<SignedLog, 15> v;
    const auto nodes = qk15_nodes(p.a, p.b);
    p.m = kNegInf;
    for (int i = 0; i < 15; ++i) {
      v[i] = f(nodes[i].x);
      if (v[i].sign != 0) p.m = std::max(p.m, v[i].log_abs);
    }
    p.sk = p.sg = p.sabs = 0.0;
    if (p.m == kNegInf) return;
    for (int i = 0; i < 15; ++i) {
      if (v[i].sign == 0) continue;
      const double e = v[i].sign * std::exp(v[i].log_abs - p.m);
      p.sk += nodes[i].w_kronrod * e;
      p.sg += nodes[i].w_gauss * e;
      p.sabs += nodes[i].w_kronrod * std::abs(e);
    }
  };
  std::vector<Panel> panels;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    if (!(b > a)) continue;
    // Width h_max next to each cut, doubling toward the middle of the segment.
    std::vector<double> left = {a}, right = {b};
    const double mid = 0.5 * (a + b);
    for (double w = h_max; left.back() + w < mid; w *= 2.0) left.push_back(left.back() + w);
    for (double w = h_max; right.back() - w > mid; w *= 2.0) right.push_back(right.back() - w);
    if (left.size() > 1 || right.size() > 1) left.push_back(mid);
    left.insert(left.end(), right.rbegin(), right.rend());
    for (std::size_t i = 0; i + 1 < left.size(); ++i) panels.push_back({left[i], left[i + 1]});
  }
  for (auto& p : panels) eval(p);
  LogIntegral out;
  for (int round = 0; round < 30; ++round) {
    double big = kNegInf;
    for (const auto& p : panels) {
      if (p.m != kNegInf && p.sabs > 0.0) big = std::max(big, p.m + std::log(p.sabs));
    }
    if (big == kNegInf) return out;
    double total = 0.0, absolute = 0.0, err = 0.0;
    std::vector<double> perr(panels.size(), 0.0);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const auto& p = panels[i];
      if (p.m == kNegInf) continue;
      const double s = std::exp(p.m - big);
      total += p.sk * s;
      absolute += p.sabs * s;
      perr[i] = std::abs(p.sk - p.sg) * s;
      err += perr[i];
    }
    out.value = total == 0.0 ? SignedLog{} : SignedLog{big + std::log(std::abs(total)), total > 0.0 ? 1 : -1};
    out.rel_error = err / absolute;
    out.panels = static_cast<int>(panels.size());
    if (out.rel_error <= tol || static_cast<int>(panels.size()) >= max_panels) return out;
    const double cut = tol * absolute / static_cast<double>(panels.size());
    std::vector<Panel> next;
    next.reserve(panels.size() * 2);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (perr[i] > cut) {
        const double mid = 0.5 * (panels[i].a + panels[i].b);
        Panel l{panels[i].a, mid}, r{mid, panels[i].b};
        eval(l);
        eval(r);
        next.push_back(l);
        next.push_back(r);
      } else {
        next.push_back(panels[i]);
      }
    }
    panels = std::move(next);
  }
  return out;
}

/// Worker count from PGD_THREADS, else the hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("PGD_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on thread_count() threads; rethrows the first failure.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Fornberg weights for the first derivative at z from the given nodes.
inline std::vector<double> derivative_weights(double z, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

/// d/dx of samples f on nodes x with a 5-point stencil (centered where possible).
inline std::vector<double> derivative(std::span<const double> x, std::span<const double> f) {
  const std::size_t n = x.size();
  if (n != f.size()) throw Error(ErrorCode::InvalidArgument, "derivative: size mismatch");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "derivative needs at least two nodes");
  const std::size_t width = std::min<std::size_t>(5, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    lo = std::min(lo, n - width);
    const auto w = derivative_weights(x[i], x.subspan(lo, width));
    double s = 0.0;
    for (std::size_t k = 0; k < width; ++k) s += w[k] * f[lo + k];
    out[i] = s;
  }
  return out;
}

/// Composite Simpson on a uniform grid with an even number of intervals (trapezoid on the odd leftover).
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  std::size_t m = (n - 1) % 2 == 0 ? n : n - 1;
  double s = 0.0;
  if (m >= 3) {
    s = f[0] + f[m - 1];
    for (std::size_t i = 1; i + 1 < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    s *= h / 3.0;
  }
  if (m != n) s += 0.5 * h * (f[n - 2] + f[n - 1]);
  return s;
}

/// Solves a tridiagonal system in place (Thomas). sub[0] and sup[n-1] are unused.
inline void solve_tridiagonal(std::vector<double>& sub, std::vector<double>& diag, std::vector<double>& sup,
                              std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw Error(ErrorCode::SingularSystem, "zero pivot in tridiagonal solve");
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw Error(ErrorCode::SingularSystem, "zero pivot in tridiagonal solve");
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

}  // namespace pgd::num
