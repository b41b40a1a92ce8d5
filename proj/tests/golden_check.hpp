#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "golden_fixtures.hpp"

namespace golden {

struct CheckResult {
  int samples = 0;
  double max_field_error = 0.0;
  double max_atom_error = 0.0;
  bool atom_count_mismatch = false;
  bool label_ok = true;
  std::string first_failure;

  bool ok(double tol) const {
    return samples > 0 && !atom_count_mismatch && label_ok && max_field_error <= tol && max_atom_error <= tol;
  }
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Compares the evolved solution with the fixture at `n` random points off the fronts.
inline CheckResult check_fixture(const Fixture& fx, int n, unsigned seed) {
  CheckResult r;
  const pgd::PiecewiseSolution sol = pgd::evolve(fx.data);
  r.label_ok = sol.case_label && *sol.case_label == fx.label;
  const double horizon = fx.data.horizon;
  double x_max = 0.0;
  for (double x : fx.fronts(horizon)) x_max = std::max(x_max, x);
  x_max += 2.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(1e-3, 1.0), ux(0.0, 1.0);
  int attempts = 0;
  while (r.samples < n && attempts < 100 * n) {
    ++attempts;
    const double t = horizon * ut(rng);
    const double x = x_max * ux(rng);
    if (x <= 1e-9) continue;
    bool near = false;
    for (double xf : fx.fronts(t)) near = near || std::abs(x - xf) < 1e-6;
    for (const auto& a : pgd::atoms_at(sol, t)) near = near || std::abs(x - a.position) < 1e-6;
    if (near) continue;
    ++r.samples;
    const Field want = fx.field(x, t);
    const auto got = pgd::evaluate(sol, x, t);
    const double e = std::max(rel_err(got.u, want.u), rel_err(got.rho_regular, want.rho));
    if (e > r.max_field_error) {
      r.max_field_error = e;
      if (e > 1e-10 && r.first_failure.empty()) {
        r.first_failure = "field at x=" + std::to_string(x) + " t=" + std::to_string(t);
      }
    }
    const auto want_atoms = fx.atoms(t);
    const auto got_atoms = pgd::atoms_at(sol, t);
    if (want_atoms.size() != got_atoms.size()) {
      r.atom_count_mismatch = true;
      if (r.first_failure.empty()) r.first_failure = "atom count at t=" + std::to_string(t);
      continue;
    }
    for (std::size_t i = 0; i < want_atoms.size(); ++i) {
      r.max_atom_error = std::max({r.max_atom_error, rel_err(got_atoms[i].position, want_atoms[i].x),
                                   rel_err(got_atoms[i].strength, want_atoms[i].e)});
    }
  }
  return r;
}

}  // namespace golden
