// Two delta shocks issuing from the boundary and from x0 = 1 merge at t = 2/3.
// Prints the event log and the surviving atom, then the exact profile at t = 1.5.

#include <cstdio>

#include "pgd/pgd.hpp"

int main() {
  const pgd::ProblemData data{{3.0, 1.0}, {2.0, 1.0}, {0.0, 1.0}, 1.0, 1.5};
  const auto sol = pgd::evolve(data);

  if (sol.case_label) std::printf("case %d subcase %d\n", sol.case_label->case_number, sol.case_label->subcase);
  for (const auto& e : sol.events) {
    std::printf("%s at t = %.6f, x = %.6f, strength %.6f -> %.6f\n", pgd::to_string(e.kind), e.time, e.position,
                e.e_before.empty() ? 0.0 : e.e_before[0] + (e.e_before.size() > 1 ? e.e_before[1] : 0.0),
                e.e_after.empty() ? 0.0 : e.e_after[0]);
  }
  for (const auto& a : pgd::atoms_at(sol, 1.5)) std::printf("atom at x = %.6f with e = %.6f\n", a.position, a.strength);

  std::printf("x,u,rho\n");
  for (int i = 1; i <= 16; ++i) {
    const double x = 0.25 * i;
    const auto s = pgd::evaluate(sol, x, 1.5);
    std::printf("%.2f,%.6f,%.6f\n", x, s.u, s.rho_regular);
  }
}
