// Prepare a weakly entangled pair, push it through the mixing map and report
// what survives.

#include <cstdio>

#include "inept/inept.hpp"

int main() {
  const double s = 0.05;
  const auto best = inept::optimize_prep(s);
  std::printf("S = %.3f: best amplitude a* = %.6f\n", s, *best.a_star);
  std::printf("  concurrence %.6g, E_F %.6g (small-S estimate %.6g)\n", best.c_max, best.ef_max,
              inept::ef_max_asymptotic(s));

  const inept::PrepParams bell(inept::kInvSqrt2, s);
  std::printf("  a Bell pair at the same S keeps concurrence %.6g\n", inept::concurrence_xstate(bell));

  const auto rho = inept::apply_map(inept::psi_a(*best.a_star), s);
  std::printf("  general Wootters concurrence of the mapped state %.6g\n", inept::concurrence_general(rho));
  std::printf("  CHSH value %.6g (local bound 2)\n", inept::chsh_value(rho));
  return 0;
}
