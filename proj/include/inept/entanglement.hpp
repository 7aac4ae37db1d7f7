#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>

#include "inept/errors.hpp"
#include "inept/inept_map.hpp"
#include "inept/optimize.hpp"
#include "inept/qlinalg.hpp"
#include "inept/states.hpp"

namespace inept {

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
struct WoottersSpectrum {
  std::array<double, 4> lambdas{};
};

/// (σy ⊗ σy) conj(rho) (σy ⊗ σy)
inline CMatrix4 spin_flip(const CMatrix4& rho) {
  const CMatrix4 yy = tensor(pauli(Axis::Y), pauli(Axis::Y));
  return yy * conjugate(rho) * yy;
}

/// The λ's come from the Hermitian product sqrt(rho) * rho~ * sqrt(rho),
/// whose eigenvalues coincide with those of rho * rho~.
inline WoottersSpectrum wootters_spectrum(const DensityMatrix4& rho) {
  const CMatrix4 root = mat_sqrt_psd(rho.matrix());
  const CMatrix4 r = root * spin_flip(rho.matrix()) * root;
  const auto e = eig_hermitian(0.5 * (r + adjoint(r)));
  WoottersSpectrum w;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e.values[i] < -kPsdClamp) {
      throw NumericFailure("wootters_spectrum: negative eigenvalue " + std::to_string(e.values[i]));
    }
    w.lambdas[i] = std::sqrt(std::max(e.values[i], 0.0));
  }
  return w;
}

inline double concurrence_general(const DensityMatrix4& rho) {
  const auto& l = wootters_spectrum(rho).lambdas;
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// 2 s a sqrt(1-a^2) - 2 (1-s) a^2 (1-a^2), without clamping. Negative values
/// mean no entanglement survives; useful for root finding.
inline double concurrence_xstate_unclamped(const PrepParams& p) {
  const double v = p.a() * std::sqrt(1.0 - p.a() * p.a());
  return 2.0 * (p.s() * v - (1.0 - p.s()) * v * v);
}

/// Concurrence of M[psi_a] in closed form.
inline double concurrence_xstate(const PrepParams& p) {
  return std::max(0.0, concurrence_xstate_unclamped(p));
}

/// Leading small-s, small-a behaviour of the concurrence: 2as - 2a^2.
inline double concurrence_small_s(double a, double s) { return 2.0 * a * s - 2.0 * a * a; }

/// Success probability below which M[psi_a] carries no entanglement:
/// s* = v / (1 + v) with v = a sqrt(1-a^2). Throws UndefinedThreshold at
/// a = 0 and a = 1, where psi_a is a product state.
inline double survival_threshold(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw UndefinedThreshold("survival threshold is undefined for a = " + std::to_string(a) +
                             " (product state, never entangled)");
  }
  const double v = a * std::sqrt(1.0 - a * a);
  return v / (1.0 + v);
}

/// Same threshold located by bisection on the unclamped concurrence, which is
/// increasing in s.
inline double survival_threshold_bisection(double a, double tol = 1e-12) {
  if (!(a > 0.0 && a < 1.0)) {
    throw UndefinedThreshold("survival threshold is undefined for a = " + std::to_string(a));
  }
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (concurrence_xstate_unclamped(PrepParams(a, mid)) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Binary entropy in bits.
inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  const double q = 1.0 - p;
  return -(p * std::log2(p) + q * std::log2(q));
}

/// E_F = h((1 + sqrt(1 - c^2)) / 2). The minority probability is evaluated
/// as c^2 / (2 (1 + sqrt(1 - c^2))) so tiny concurrences keep full precision.
inline double entanglement_of_formation(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw InvalidArgument("concurrence must lie in [0, 1], got " + std::to_string(c));
  }
  if (c == 0.0) return 0.0;
  const double root = std::sqrt((1.0 - c) * (1.0 + c));
  const double q = c * c / (2.0 * (1.0 + root));
  if (q >= 0.5) return 1.0;
  const double p = 1.0 - q;
  return -(q * std::log2(q) + p * std::log1p(-q) / std::numbers::ln2);
}

struct OptimalPrep {
  double s = 0.0;
  std::optional<double> a_star;  // empty when s = 0: every a gives zero
  double c_max = 0.0;
  double ef_max = 0.0;
};

inline constexpr std::size_t kDefaultOptimizerGrid = 4097;

/// Amplitude in [0, 1/sqrt(2)] maximizing the delivered concurrence at
/// success probability s. The upper half of [0, 1] mirrors the lower one
/// under a <-> sqrt(1-a^2) and is not searched.
///
/// The unclamped concurrence is used as the objective so the search stays
/// well defined where the clamped value is identically zero.
inline OptimalPrep optimize_prep(double s, std::size_t grid_resolution = kDefaultOptimizerGrid) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("success probability s must lie in [0, 1], got " + std::to_string(s));
  if (grid_resolution < 2) throw InvalidArgument("grid resolution must be at least 2");
  OptimalPrep out;
  out.s = s;
  if (s == 0.0) return out;

  const auto best = grid_golden_maximize(
      [s](double a) { return concurrence_xstate_unclamped(PrepParams(a, s)); }, 0.0, kInvSqrt2,
      grid_resolution);
  out.a_star = best.x;
  out.c_max = std::clamp(best.value, 0.0, 1.0);
  out.ef_max = entanglement_of_formation(out.c_max);
  return out;
}

/// Small-s approximation of the maximal entanglement of formation:
/// (s^4 / 4) [log2(1/s) + 1 + 1/(4 ln 2)].
inline double ef_max_asymptotic(double s) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("ef_max_asymptotic requires 0 < s < 1, got " + std::to_string(s));
  return std::pow(s, 4) / 4.0 * (std::log2(1.0 / s) + 1.0 + 1.0 / (4.0 * std::numbers::ln2));
}

/// n * E_F^max(1/n): entanglement obtainable from n customer pairs whose
/// shipments are uniformly permuted, using single-pair preparations only.
inline double eisert_lower_bound(long long n, std::size_t grid_resolution = kDefaultOptimizerGrid) {
  if (n < 2) throw InvalidArgument("eisert_lower_bound requires n >= 2, got " + std::to_string(n));
  const double nd = static_cast<double>(n);
  return nd * optimize_prep(1.0 / nd, grid_resolution).ef_max;
}

}  // namespace inept
