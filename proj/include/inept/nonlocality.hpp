#pragma once

// CHSH analysis through the Horodecki criterion and a local hidden variable
// construction for delivered states.
//
// LHV construction: if M[psi_a] = c * rho_W + (1 - c) * rho_sep with
// 0 < c < 1, rho_W the Werner state of barrett_state() (which has an LHV model
// for non-sequential measurements) and rho_sep separable, then M[psi_a] has one
// too. Only diagonal rho_sep are tried. Any state diagonal in the product
// basis is a mixture of product projectors and hence separable, so
// feasibility reduces to the sign of four numbers.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "inept/entanglement.hpp"
#include "inept/errors.hpp"
#include "inept/inept_map.hpp"
#include "inept/parallel.hpp"
#include "inept/qlinalg.hpp"
#include "inept/states.hpp"

namespace inept {

/// T_ij = Tr[rho (σ_i ⊗ σ_j)], i, j over x, y, z.
struct CorrelationMatrix {
  std::array<std::array<double, 3>, 3> t{};
};

inline constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

inline CorrelationMatrix correlation_matrix(const DensityMatrix4& rho) {
  CorrelationMatrix out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const CMatrix4 obs = tensor(pauli(kAxes[i]), pauli(kAxes[j]));
      out.t[i][j] = trace(rho.matrix() * obs).real();
    }
  return out;
}

/// Sum of the two largest eigenvalues of T^T T. The optimal CHSH value is
/// 2 sqrt(M); the inequality is violated iff M > 1.
inline double horodecki_m(const DensityMatrix4& rho) {
  const auto t = correlation_matrix(rho).t;
  CMatrix<3> tt;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 3; ++k) sum += t[k][i] * t[k][j];
      tt(i, j) = sum;
    }
  const auto e = eig_hermitian(tt);
  return e.values[0] + e.values[1];
}

inline double chsh_value(const DensityMatrix4& rho) { return 2.0 * std::sqrt(horodecki_m(rho)); }

inline bool violates_chsh(const DensityMatrix4& rho) { return horodecki_m(rho) > 1.0; }

/// Smallest s above which M[psi_a] violates CHSH. With w = 4 a^2 (1 - a^2)
/// the criterion reads s^2 w + (1 - w + w s)^2 > 1, whose positive root is
///   s* = ((w - 1) + sqrt(3 - w)) / (1 + w).
inline double chsh_boundary(double a) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("chsh_boundary requires 0 < a < 1, got " + std::to_string(a));
  const double w = 4.0 * a * a * (1.0 - a * a);
  return ((w - 1.0) + std::sqrt(3.0 - w)) / (1.0 + w);
}

/// The same boundary located by bisection on horodecki_m of the full mapped
/// matrix.
inline double chsh_boundary_bisection(double a, double tol = 1e-12) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("chsh_boundary requires 0 < a < 1, got " + std::to_string(a));
  const auto state = psi_a(a);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (horodecki_m(apply_map(state, mid)) > 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

enum class LhvtConstraint { CRange, D1Nonneg, D2Nonneg, D3Nonneg, D4Nonneg };

inline const char* constraint_tag(LhvtConstraint c) {
  switch (c) {
    case LhvtConstraint::CRange: return "c_range";
    case LhvtConstraint::D1Nonneg: return "d1_nonneg";
    case LhvtConstraint::D2Nonneg: return "d2_nonneg";
    case LhvtConstraint::D3Nonneg: return "d3_nonneg";
    case LhvtConstraint::D4Nonneg: return "d4_nonneg";
  }
  return "?";
}

/// Diagonal of barrett_state() in the |00>,|01>,|10>,|11> order.
inline constexpr std::array<double, 4> kWernerDiag{17.0 / 48.0, 7.0 / 48.0, 7.0 / 48.0, 17.0 / 48.0};
inline constexpr double kWernerCoherence = 5.0 / 24.0;
inline constexpr double kLhvtSlack = 1e-12;

struct LhvtWitness {
  double c = 0.0;
  std::array<double, 4> sep_diag{};  // NaN when degenerate
  bool feasible = false;
  bool degenerate = false;  // c == 1 within kLhvtSlack
  std::vector<LhvtConstraint> violated_constraints;

  bool violates(LhvtConstraint k) const {
    for (auto v : violated_constraints)
      if (v == k) return true;
    return false;
  }
};

/// The weight c is fixed by the coherence: c * 5/24 must equal t, the only
/// choice leaving a diagonal remainder. Feasibility: 0 < c < 1 and every
/// remainder entry >= -kLhvtSlack.
inline LhvtWitness lhvt_decompose(const PrepParams& p) {
  const XState x = mapped_xstate(p);
  LhvtWitness w;
  w.c = x.t / kWernerCoherence;

  if (std::abs(1.0 - w.c) <= kLhvtSlack) {
    w.degenerate = true;
    w.sep_diag.fill(std::numeric_limits<double>::quiet_NaN());
    w.violated_constraints.push_back(LhvtConstraint::CRange);
    return w;
  }
  if (!(w.c > 0.0 && w.c < 1.0)) w.violated_constraints.push_back(LhvtConstraint::CRange);

  constexpr std::array<LhvtConstraint, 4> tags{LhvtConstraint::D1Nonneg, LhvtConstraint::D2Nonneg,
                                               LhvtConstraint::D3Nonneg, LhvtConstraint::D4Nonneg};
  for (std::size_t i = 0; i < 4; ++i) {
    w.sep_diag[i] = (x.d[i] - w.c * kWernerDiag[i]) / (1.0 - w.c);
    if (w.sep_diag[i] < -kLhvtSlack) w.violated_constraints.push_back(tags[i]);
  }
  w.feasible = w.violated_constraints.empty();
  return w;
}

/// Entangled states for which the Werner-mixture construction gives an LHV
/// model.
inline bool lhvt_region(const PrepParams& p) {
  return concurrence_xstate(p) > 0.0 && lhvt_decompose(p).feasible;
}

struct GridSpec {
  std::size_t a_points = 200;
  std::size_t s_points = 200;
};

/// Cell centres (i + 1/2) / n, i = 0..n-1: uniform over (0, 1), axes excluded.
inline double cell_center(std::size_t i, std::size_t n) {
  return (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

struct RegionCell {
  double a = 0.0;
  double s = 0.0;
  double concurrence = 0.0;
  double ef = 0.0;
  double horodecki = 0.0;
  bool entangled = false;
  bool chsh = false;
  bool lhvt = false;
};

/// Row-major over a (outer) then s (inner). Rows run on `threads` workers;
/// the output order does not depend on scheduling.
inline std::vector<RegionCell> region_scan(const GridSpec& grid, unsigned threads = default_thread_count()) {
  if (grid.a_points < 2 || grid.s_points < 2) throw InvalidArgument("region grid needs at least 2 points per axis");
  std::vector<RegionCell> cells(grid.a_points * grid.s_points);
  parallel_for(grid.a_points, threads, [&](std::size_t i) {
    const double a = cell_center(i, grid.a_points);
    const auto prepared = psi_a(a);
    for (std::size_t j = 0; j < grid.s_points; ++j) {
      const double s = cell_center(j, grid.s_points);
      const PrepParams p(a, s);
      RegionCell& cell = cells[i * grid.s_points + j];
      cell.a = a;
      cell.s = s;
      cell.concurrence = concurrence_xstate(p);
      cell.ef = entanglement_of_formation(cell.concurrence);
      cell.horodecki = horodecki_m(apply_map(prepared, s));
      cell.entangled = cell.concurrence > 0.0;
      cell.chsh = cell.horodecki > 1.0;
      cell.lhvt = lhvt_region(p);
    }
  });
  return cells;
}

/// Which remainder constraints shape the LHV region. Over entangled cells with
/// 0 < c < 1, a constraint binds where it is the only one violated; on
/// feasible cells `min_slack` is the smallest value the entry takes.
struct ConstraintActivity {
  std::array<std::size_t, 4> sole_violations{};
  std::array<double, 4> min_slack{};
  std::size_t feasible_cells = 0;

  std::vector<LhvtConstraint> never_binding() const {
    std::vector<LhvtConstraint> out;
    constexpr std::array<LhvtConstraint, 4> tags{LhvtConstraint::D1Nonneg, LhvtConstraint::D2Nonneg,
                                                 LhvtConstraint::D3Nonneg, LhvtConstraint::D4Nonneg};
    for (std::size_t i = 0; i < 4; ++i)
      if (sole_violations[i] == 0) out.push_back(tags[i]);
    return out;
  }
};

inline ConstraintActivity lhvt_constraint_activity(const GridSpec& grid) {
  ConstraintActivity act;
  act.min_slack.fill(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < grid.a_points; ++i) {
    for (std::size_t j = 0; j < grid.s_points; ++j) {
      const PrepParams p(cell_center(i, grid.a_points), cell_center(j, grid.s_points));
      if (concurrence_xstate(p) <= 0.0) continue;
      const auto w = lhvt_decompose(p);
      if (w.degenerate || w.violates(LhvtConstraint::CRange)) continue;
      if (w.feasible) {
        ++act.feasible_cells;
        for (std::size_t k = 0; k < 4; ++k) act.min_slack[k] = std::min(act.min_slack[k], w.sep_diag[k]);
      } else if (w.violated_constraints.size() == 1) {
        ++act.sole_violations[static_cast<std::size_t>(w.violated_constraints.front()) - 1];
      }
    }
  }
  return act;
}

}  // namespace inept
