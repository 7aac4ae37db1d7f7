#pragma once

// The mixing map of an unreliable delivery service:
//
//   M[rho] = s * rho + (1 - s) * Tr_B[rho] ⊗ Tr_A[rho]
//
// With probability s the customers hold the intended pair, otherwise two
// uncorrelated qubits drawn from the marginals. M is nonlinear in rho, so it
// is implemented as a plain state-to-state function.

#include <array>
#include <cmath>
#include <string>

#include "inept/qlinalg.hpp"
#include "inept/states.hpp"

namespace inept {

/// X-state with a single real coherence between |00> and |11>:
///   diag = (d1, d2, d3, d4) in the |00>,|01>,|10>,|11> order, rho(00,11) = t.
struct XState {
  std::array<double, 4> d{};
  double t = 0.0;

  CMatrix4 matrix() const {
    CMatrix4 m = CMatrix4::diagonal(d);
    m(0, 3) = t;
    m(3, 0) = t;
    return m;
  }
};

inline DensityMatrix4 apply_map(const DensityMatrix4& rho, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("success probability s must lie in [0, 1], got " + std::to_string(s));
  const CMatrix4& m = rho.matrix();
  const CMatrix4 broken = tensor(partial_trace(m, Subsystem::A), partial_trace(m, Subsystem::B));
  return validate(s * m + (1.0 - s) * broken);
}

/// Closed form of apply_map(psi_a(a), s).
inline XState mapped_xstate(const PrepParams& p) {
  const double a2 = p.a() * p.a();
  const double b2 = 1.0 - a2;
  const double s = p.s();
  XState x;
  x.d[0] = s * a2 + (1.0 - s) * a2 * a2;
  x.d[1] = (1.0 - s) * a2 * b2;
  x.d[2] = x.d[1];
  x.d[3] = s * b2 + (1.0 - s) * b2 * b2;
  x.t = s * p.a() * std::sqrt(b2);
  return x;
}

/// <psi_a| M[psi_a] |psi_a> = 1 - 3 a^2 (1 - s)(1 - a^2)
inline double fidelity(const PrepParams& p) {
  const double a2 = p.a() * p.a();
  return 1.0 - 3.0 * a2 * (1.0 - p.s()) * (1.0 - a2);
}

}  // namespace inept
