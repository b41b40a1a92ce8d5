// Viscous profile of a boundary delta shock (u_b = 2 into u0 = 0.5) for a few
// eps, next to the exact limit. The density spike carries the atom mass.

#include <cstdio>

#include "pgd/pgd.hpp"

int main() {
  const pgd::ProblemData data{{2.0, 2.0}, {0.5, 1.0}, {0.5, 1.0}, 5.0, 1.0};
  const auto exact = pgd::evolve(data);
  const auto atom = pgd::atoms_at(exact, 1.0).at(0);
  std::printf("exact atom at x = %.4f, e = %.4f\n", atom.position, atom.strength);

  for (double eps : {0.1, 0.05, 0.02}) {
    const auto grid = pgd::uniform_grid(0.01, 3.0, 300, {1.0});
    const auto field = pgd::viscous_fields(pgd::solve_pq_fd(pgd::viscous_inputs(data, eps, false), eps, grid));
    const auto cmp = pgd::compare(exact, field, 0.2);
    const double mass = pgd::window_atom_mass(field, 0, atom.position, 0.3, 2.0, 1.0);
    std::printf("eps = %.2f: sup |u - u_exact| away from the shock = %.3e, window mass = %.4f\n", eps, cmp[0].sup,
                mass);
  }
}
