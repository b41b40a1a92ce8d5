#pragma once

// Scenario files and the per-mode drivers behind the command-line tool.
// Validation problems map to exit status 2, solver problems to 3.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pgd/front_tracking.hpp"
#include "pgd/io.hpp"
#include "pgd/viscous.hpp"
#include "pgd/weak_check.hpp"

namespace pgd {

enum class Mode { Riemann, BoundaryRiemann, Interact, Viscous, Check, Converge };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Riemann: return "riemann";
    case Mode::BoundaryRiemann: return "boundary-riemann";
    case Mode::Interact: return "interact";
    case Mode::Viscous: return "viscous";
    case Mode::Check: return "check";
    case Mode::Converge: return "converge";
  }
  return "unknown";
}

inline std::optional<Mode> mode_from(const std::string& s) {
  for (auto m : {Mode::Riemann, Mode::BoundaryRiemann, Mode::Interact, Mode::Viscous, Mode::Check, Mode::Converge}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

struct Scenario {
  Mode mode = Mode::Interact;
  ProblemData data;
  std::vector<double> eps_list;  // one entry for viscous mode
  int grid_nx = 201;
  int grid_nt = 4;
  double x_max = 0.0;  // 0 picks a window holding every front
  double radius = 0.2;
  std::vector<double> times;  // profile times; empty means horizon/2 and horizon
};

/// Fails with a message naming the offending field.
inline Scenario scenario_from_config(const FlatConfig& c, std::optional<Mode> mode_arg = std::nullopt) {
  Scenario s;
  std::optional<Mode> from_file;
  if (c.has("mode")) {
    from_file = mode_from(c.text("mode"));
    if (!from_file) throw Error(ErrorCode::ParseError, "mode: unknown value '" + c.text("mode") + "'");
  }
  if (mode_arg && from_file && *mode_arg != *from_file) {
    throw Error(ErrorCode::ParseError, std::string("mode: file says '") + to_string(*from_file) + "', command line says '" +
                                           to_string(*mode_arg) + "'");
  }
  if (!mode_arg && !from_file) throw Error(ErrorCode::ParseError, "missing field 'mode'");
  s.mode = mode_arg ? *mode_arg : *from_file;

  const bool needs_boundary = s.mode != Mode::Riemann;
  const bool needs_right = s.mode != Mode::BoundaryRiemann;
  const bool needs_x0 = needs_right;
  if (needs_boundary) s.data.boundary = {c.number("u_b"), c.number("rho_b")};
  s.data.left = {c.number("u_L"), c.number("rho_L")};
  s.data.right = needs_right ? State{c.number("u_R"), c.number("rho_R")} : s.data.left;
  if (needs_x0) s.data.x0 = c.number("x0");
  s.data.horizon = c.number("horizon");
  if (!(s.data.horizon > 0.0)) throw Error(ErrorCode::InvalidArgument, "horizon must be > 0");
  if (needs_x0 && (s.mode == Mode::Riemann ? s.data.x0 < 0.0 : !(s.data.x0 > 0.0))) {
    throw Error(ErrorCode::InvalidArgument, s.mode == Mode::Riemann ? "x0 must be >= 0" : "x0 must be > 0");
  }
  for (const auto& [name, v] : {std::pair{"rho_b", s.data.boundary.rho}, std::pair{"rho_L", s.data.left.rho},
                                std::pair{"rho_R", s.data.right.rho}}) {
    if (v < 0.0) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be >= 0");
  }
  if (s.mode == Mode::Viscous) {
    if (c.has("epsilon_list")) throw Error(ErrorCode::InvalidArgument, "epsilon_list: viscous mode takes one epsilon");
    s.eps_list = {c.number("epsilon")};
  } else if (s.mode == Mode::Converge) {
    s.eps_list = c.numbers("epsilon_list");
    if (s.eps_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "epsilon_list needs at least three values");
    for (std::size_t i = 1; i < s.eps_list.size(); ++i) {
      if (!(s.eps_list[i] < s.eps_list[i - 1])) throw Error(ErrorCode::InvalidArgument, "epsilon_list must decrease");
    }
  }
  for (double e : s.eps_list) {
    if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  }
  if (c.has("grid_nx")) s.grid_nx = static_cast<int>(c.number("grid_nx"));
  if (c.has("grid_nt")) s.grid_nt = static_cast<int>(c.number("grid_nt"));
  if (s.grid_nx < 8) throw Error(ErrorCode::InvalidArgument, "grid_nx must be >= 8");
  if (s.grid_nt < 1) throw Error(ErrorCode::InvalidArgument, "grid_nt must be >= 1");
  if (c.has("x_max")) {
    s.x_max = c.number("x_max");
    if (!(s.x_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "x_max must be > 0");
  }
  if (c.has("exclusion_radius")) {
    s.radius = c.number("exclusion_radius");
    if (!(s.radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "exclusion_radius must be >= 0");
  }
  if (c.has("times")) {
    s.times = c.numbers("times");
    for (double t : s.times) {
      if (!(t > 0.0) || t > s.data.horizon) throw Error(ErrorCode::InvalidArgument, "times must lie in (0, horizon]");
    }
  }
  return s;
}

inline Scenario load_scenario(const std::string& path, std::optional<Mode> mode_arg = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open config '" + path + "'");
  return scenario_from_config(FlatConfig::parse(in), mode_arg);
}

/// Solution of the scenario's exact problem.
inline PiecewiseSolution exact_solution(const Scenario& s) {
  if (s.mode == Mode::Riemann) {
    const InteriorRiemannData d{s.data.left, s.data.right, s.data.x0};
    auto sol = solve_interior_riemann(d, s.data.horizon);
    sol.case_label = interior_case(d);
    return sol;
  }
  if (s.mode == Mode::BoundaryRiemann) {
    const BoundaryRiemannData d{s.data.boundary, s.data.left};
    auto sol = solve_boundary_riemann(d, s.data.horizon);
    sol.case_label = boundary_case(d);
    return sol;
  }
  return evolve(s.data);
}

/// Right end of the output window: every front at the horizon plus a margin.
inline double window_right(const Scenario& s, const PiecewiseSolution& sol) {
  if (s.x_max > 0.0) return s.x_max;
  double x = s.mode == Mode::BoundaryRiemann ? 0.0 : s.data.x0;
  for (const auto& f : sol.slabs.back().fronts) x = std::max(x, f.position(sol.horizon));
  return x + 1.0;
}

struct CompareRow {
  double t = 0.0;
  double sup = 0.0;
  double l1 = 0.0;
  int points = 0;
};

/// Sup and L1 distance of u over grid points farther than `radius` from x = 0
/// and from every front, one row per grid time.
inline std::vector<CompareRow> compare(const PiecewiseSolution& exact, const ViscousField& field, double radius) {
  std::vector<CompareRow> out;
  int total = 0;
  const auto& x = field.grid_x;
  for (std::size_t it = 0; it < field.grid_t.size(); ++it) {
    const double t = field.grid_t[it];
    const auto& fronts = exact.slab_at(t).fronts;
    CompareRow row{t, 0.0, 0.0, 0};
    for (std::size_t ix = 0; ix < x.size(); ++ix) {
      if (x[ix] <= radius) continue;
      const bool near = std::any_of(fronts.begin(), fronts.end(),
                                    [&](const FrontCurve& f) { return std::abs(f.position(t) - x[ix]) <= radius; });
      if (near) continue;
      const double e = std::abs(field.u[it][ix] - evaluate(exact, x[ix], t).u);
      const double lo = ix > 0 ? 0.5 * (x[ix] - x[ix - 1]) : 0.0;
      const double hi = ix + 1 < x.size() ? 0.5 * (x[ix + 1] - x[ix]) : 0.0;
      row.sup = std::max(row.sup, e);
      row.l1 += e * (lo + hi);
      ++row.points;
    }
    total += row.points;
    out.push_back(row);
  }
  if (total == 0) throw Error(ErrorCode::EmptyComparison, "exclusion radius removes every grid point");
  return out;
}

struct AtomRow {
  double t = 0.0;
  double x = 0.0;
  double e_exact = 0.0;
  double e_viscous = 0.0;
};

/// Window-integral estimate of every exact atom whose window fits the grid.
inline std::vector<AtomRow> compare_atoms(const PiecewiseSolution& exact, const ViscousField& field, double half) {
  std::vector<AtomRow> out;
  for (std::size_t it = 0; it < field.grid_t.size(); ++it) {
    const double t = field.grid_t[it];
    for (const auto& a : atoms_at(exact, t)) {
      if (a.position - half < field.grid_x.front() || a.position + half > field.grid_x.back()) continue;
      const double rl = evaluate(exact, a.position - half, t).rho_regular;
      const double rr = evaluate(exact, a.position + half, t).rho_regular;
      out.push_back({t, a.position, a.strength, window_atom_mass(field, it, a.position, half, rl, rr)});
    }
  }
  return out;
}

struct RunResult {
  int status = 0;  // 0 ok, 2 invalid input, 3 solver failure or failed check
  std::string message;
  std::vector<std::string> files;
};

namespace detail {

inline std::vector<double> sample_times(const Scenario& s) {
  if (!s.times.empty()) return s.times;
  return {0.5 * s.data.horizon, s.data.horizon};
}

inline std::vector<double> linspace_open(double hi, int n) {
  std::vector<double> xs;
  for (int i = 1; i <= n; ++i) xs.push_back(hi * i / n);
  return xs;
}

class Emitter {
 public:
  Emitter(std::string prefix, RunResult& r) : prefix_(std::move(prefix)), result_(r) {
    const auto dir = std::filesystem::path(prefix_).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
  }

  template <class F>
  void file(const std::string& suffix, F&& write) {
    const std::string path = prefix_ + suffix;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    write(os);
    result_.files.push_back(path);
  }

  std::string name(const std::string& suffix) const {
    return std::filesystem::path(prefix_ + suffix).filename().string();
  }

 private:
  std::string prefix_;
  RunResult& result_;
};

inline void emit_exact(const Scenario& s, const PiecewiseSolution& sol, Emitter& out) {
  const auto times = sample_times(s);
  const auto xs = linspace_open(window_right(s, sol), s.grid_nx);
  out.file(".solution.json", [&](std::ostream& os) { os << to_json_text(sol); });
  out.file(".events.jsonl", [&](std::ostream& os) { write_events_jsonl(os, sol.events); });
  out.file(".case.txt", [&](std::ostream& os) {
    if (sol.case_label) {
      os << "case " << sol.case_label->case_number;
      if (sol.case_label->subcase) os << " subcase " << sol.case_label->subcase;
      os << "\n";
    } else {
      os << "unlabelled\n";
    }
  });
  out.file(".profiles.csv", [&](std::ostream& os) { write_table(os, profile_table(sol, xs, times)); });
  out.file(".atoms.csv", [&](std::ostream& os) { write_table(os, atom_table(sol, times)); });
  out.file(".plot.gp", [&](std::ostream& os) { write_gnuplot(os, out.name(".profiles.csv"), times, out.name(".png")); });
}

inline std::vector<TestFunction> bumps_in(double x_hi, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.05, 0.45 * x_hi), c(0.0, 1.0);
  std::vector<TestFunction> out;
  for (int k = 0; k < count; ++k) {
    const double width = w(rng);
    out.emplace_back(width + 1e-3 + c(rng) * (x_hi - 2 * width - 2e-3), width);
  }
  return out;
}

inline void run_mode(const Scenario& s, Emitter& out, RunResult& result) {
  const auto sol = exact_solution(s);
  emit_exact(s, sol, out);
  if (s.mode == Mode::Viscous) {
    const double eps = s.eps_list.front();
    const double x_hi = window_right(s, sol);
    std::vector<double> times;
    for (int k = 1; k <= s.grid_nt; ++k) times.push_back(s.data.horizon * k / s.grid_nt);
    const auto grid = uniform_grid(x_hi / s.grid_nx, x_hi, s.grid_nx, times);
    const auto field = viscous_fields(solve_pq_fd(viscous_inputs(s.data, eps, false), eps, grid));
    out.file(".viscous.csv", [&](std::ostream& os) { write_csv(os, field); });
    out.file(".compare.csv", [&](std::ostream& os) {
      Table t{{"t", "sup", "l1", "points"}, {}};
      for (const auto& r : compare(sol, field, s.radius)) t.rows.push_back({r.t, r.sup, r.l1, double(r.points)});
      write_table(os, t);
    });
    out.file(".atoms_viscous.csv", [&](std::ostream& os) {
      Table t{{"t", "x", "e_exact", "e_viscous"}, {}};
      for (const auto& r : compare_atoms(sol, field, std::max(s.radius, 10.0 * eps))) {
        t.rows.push_back({r.t, r.x, r.e_exact, r.e_viscous});
      }
      write_table(os, t);
    });
    out.file(".viscous.gp", [&](std::ostream& os) {
      write_gnuplot(os, out.name(".viscous.csv"), times, out.name(".viscous.png"));
    });
  } else if (s.mode == Mode::Check) {
    const double x_hi = window_right(s, sol);
    int failures = 0;
    out.file(".residuals.csv", [&](std::ostream& os) {
      Table t{{"center", "width", "r_u", "r_rho"}, {}};
      for (const auto& phi : bumps_in(x_hi, 20, 7)) {
        const auto r = interior_residual_exact(sol, phi, 1e-3 * s.data.horizon, s.data.horizon);
        failures += !(r.r_u < 1e-10 && r.r_rho < 1e-10);
        t.rows.push_back({phi.center, phi.width, r.r_u, r.r_rho});
      }
      write_table(os, t);
    });
    out.file(".mass.csv", [&](std::ostream& os) {
      Table t{{"t_a", "t_b", "x_max", "defect"}, {}};
      std::mt19937_64 rng(3);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int k = 0; k < 20; ++k) {
        double a = u(rng) * s.data.horizon, b = u(rng) * s.data.horizon;
        if (a > b) std::swap(a, b);
        if (b - a < 1e-6) continue;
        const double X = (0.2 + 0.8 * u(rng)) * x_hi;
        const double d = mass_balance(sol, X, a, b);
        failures += !(std::abs(d) < 1e-8);
        t.rows.push_back({a, b, X, d});
      }
      write_table(os, t);
    });
    out.file(".validate.txt", [&](std::ostream& os) {
      const auto v = validate(sol);
      failures += static_cast<int>(v.size());
      for (const auto& e : v) os << to_string(e.rule) << " slab " << e.slab << " front " << e.front << ": " << e.detail << "\n";
      for (int k = 1; k <= 50; ++k) {
        const double t = s.data.horizon * k / 50;
        const State tr = boundary_trace(sol, t);
        const bool ok = admissible_set_contains(s.data.boundary.u, tr.u) && (tr.u <= 0.0 || tr.rho == s.data.boundary.rho);
        if (!ok) {
          ++failures;
          os << "boundary trace (" << fmt17(tr.u) << ", " << fmt17(tr.rho) << ") inadmissible at t = " << fmt17(t) << "\n";
        }
      }
      os << (failures ? "FAIL" : "OK") << "\n";
    });
    if (failures) {
      result.status = 3;
      result.message = std::to_string(failures) + " check(s) failed";
    }
  } else if (s.mode == Mode::Converge) {
    LadderOptions opt;
    opt.T = s.data.horizon;
    opt.x_hi = window_right(s, sol);
    opt.radius = s.radius;
    opt.nx = s.grid_nx;
    const auto rep = convergence_table(s.data, s.eps_list, {TestFunction(0.5 * opt.x_hi, 0.3 * opt.x_hi)}, opt);
    out.file(".convergence.csv", [&](std::ostream& os) {
      Table t{{"epsilon", "residual_u", "residual_rho", "distance_u"}, {}};
      for (std::size_t k = 0; k < rep.eps_values.size(); ++k) {
        t.rows.push_back({rep.eps_values[k], rep.residual_u[k], rep.residual_rho[k], rep.distance_u[k]});
      }
      write_table(os, t);
    });
    out.file(".order.txt", [&](std::ostream& os) {
      if (rep.order_fit_skipped) {
        os << "distance order: skipped (distances at rounding level)\n";
      } else {
        os << "distance order: " << fmt17(rep.fitted_order) << "\n";
      }
      os << "residual order: " << fmt17(rep.fitted_order_residual) << "\n";
    });
  }
}

}  // namespace detail

/// Runs one scenario file, writing every output under `prefix`.
inline RunResult run_scenario_file(const std::string& path, std::optional<Mode> mode, const std::string& prefix) {
  RunResult result;
  Scenario s;
  try {
    s = load_scenario(path, mode);
  } catch (const Error& e) {
    return {2, e.what(), {}};
  }
  try {
    detail::Emitter out(prefix, result);
    detail::run_mode(s, out, result);
  } catch (const Error& e) {
    result.status = 3;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.status = 3;
    result.message = e.what();
  }
  return result;
}

}  // namespace pgd
