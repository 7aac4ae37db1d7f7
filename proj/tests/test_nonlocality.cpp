#include <gtest/gtest.h>

#include <set>

#include "inept/nonlocality.hpp"
#include "oracles.hpp"

using namespace inept;

namespace {

void expect_diag(const CorrelationMatrix& c, std::array<double, 3> d, double tol) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(c.t[i][j], i == j ? d[i] : 0.0, tol) << i << j;
}

}  // namespace

TEST(CorrelationMatrix, Bell) { expect_diag(correlation_matrix(bell_state()), {1, -1, 1}, 1e-15); }

TEST(CorrelationMatrix, MaximallyMixed) {
  expect_diag(correlation_matrix(validate(0.25 * CMatrix4::identity())), {0, 0, 0}, 0.0);
}

TEST(CorrelationMatrix, MappedBellIsWerner) {
  expect_diag(correlation_matrix(apply_map(bell_state(), 0.8)), {0.8, -0.8, 0.8}, 1e-15);
}

TEST(CorrelationMatrix, XStateClosedForm) {
  for (double a : {0.1, 0.45, 0.8})
    for (double s : {0.2, 0.6, 0.95}) {
      const auto x = mapped_xstate(PrepParams(a, s));
      expect_diag(correlation_matrix(apply_map(psi_a(a), s)),
                  {2 * x.t, -2 * x.t, x.d[0] - x.d[1] - x.d[2] + x.d[3]}, 1e-14);
    }
}

TEST(CorrelationMatrix, EntriesBounded) {
  oracle::MatrixSource src(51);
  for (int rep = 0; rep < 100; ++rep) {
    const auto t = correlation_matrix(validate(src.density())).t;
    for (const auto& row : t)
      for (double v : row) EXPECT_LE(std::abs(v), 1.0 + 1e-12);
  }
}

TEST(Horodecki, BellReachesTsirelson) {
  EXPECT_NEAR(horodecki_m(bell_state()), 2.0, 1e-14);
  EXPECT_NEAR(chsh_value(bell_state()), 2 * std::sqrt(2.0), 1e-14);
}

TEST(Horodecki, ProductStatesNeverViolate) {
  oracle::MatrixSource src(52);
  for (int rep = 0; rep < 100; ++rep) {
    auto qubit = [&] {
      const auto g = src.general<2>();
      const auto p = g * adjoint(g);
      return (1.0 / trace(p).real()) * p;
    };
    EXPECT_LE(horodecki_m(validate(tensor(qubit(), qubit()))), 1.0 + 1e-12);
  }
}

TEST(Horodecki, WernerAtPointEight) {
  const auto rho = apply_map(bell_state(), 0.8);
  EXPECT_NEAR(horodecki_m(rho), 1.28, 1e-14);
  EXPECT_NEAR(chsh_value(rho), 2 * std::sqrt(1.28), 1e-14);
  EXPECT_NEAR(chsh_value(rho), 2.2627416998, 1e-9);
}

TEST(ChshBoundary, BellIsInverseSqrt2) { EXPECT_NEAR(chsh_boundary(kInvSqrt2), kInvSqrt2, 1e-9); }

TEST(ChshBoundary, PointSix) {
  EXPECT_NEAR(chsh_boundary(0.6), 0.709443017940886747, 1e-14);
  const auto prepared = psi_a(0.6);
  const double root =
      oracle::bisect([&](double s) { return horodecki_m(apply_map(prepared, s)) > 1.0; }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(root, 0.709443017940886747, 1e-9);
}

TEST(ChshBoundary, SmallAmplitudeLimit) {
  EXPECT_NEAR(chsh_boundary(1e-3), 0.732050724665138257, 1e-12);
  EXPECT_NEAR(chsh_boundary(1e-8), std::sqrt(3.0) - 1, 1e-12);
  // grid scan of the criterion at a = 1e-3
  const auto prepared = psi_a(1e-3);
  double first = 1.0;
  for (int k = 0; k <= 100000; ++k) {
    const double s = k / 100000.0;
    if (horodecki_m(apply_map(prepared, s)) > 1.0) {
      first = s;
      break;
    }
  }
  EXPECT_NEAR(first, std::sqrt(3.0) - 1, 2e-5);
}

TEST(ChshBoundary, ClosedFormMatchesCriterionBisection) {
  for (int i = 0; i < 50; ++i) {
    const double a = 0.01 + 0.98 * i / 49.0;
    EXPECT_NEAR(chsh_boundary(a), chsh_boundary_bisection(a), 1e-8) << a;
  }
}

TEST(ChshBoundary, RejectsEndpoints) {
  EXPECT_THROW(chsh_boundary(0.0), InvalidArgument);
  EXPECT_THROW(chsh_boundary(1.0), InvalidArgument);
}

TEST(ChshBoundary, ViolationImpliesEntanglement) {
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const double a = i / 40.0, s = j / 40.0;
      if (horodecki_m(apply_map(psi_a(a), s)) > 1.0) {
        EXPECT_GT(concurrence_xstate(PrepParams(a, s)), 0.0) << a << " " << s;
      }
    }
}

TEST(Lhvt, WernerWindowFeasible) {
  const auto w = lhvt_decompose(PrepParams(kInvSqrt2, 0.35));
  EXPECT_TRUE(w.feasible);
  EXPECT_NEAR(w.c, 0.84, 1e-14);
  for (double d : w.sep_diag) EXPECT_NEAR(d, 0.25, 1e-13);
  EXPECT_TRUE(w.violated_constraints.empty());
}

TEST(Lhvt, WeightAboveOne) {
  const auto w = lhvt_decompose(PrepParams(kInvSqrt2, 0.45));
  EXPECT_FALSE(w.feasible);
  EXPECT_NEAR(w.c, 1.08, 1e-14);
  EXPECT_TRUE(w.violates(LhvtConstraint::CRange));
}

TEST(Lhvt, FirstDiagonalEntryFails) {
  const PrepParams p(0.6, 0.4);
  const auto w = lhvt_decompose(p);
  EXPECT_FALSE(w.feasible);
  EXPECT_TRUE(w.violates(LhvtConstraint::D1Nonneg));
  EXPECT_NEAR(mapped_xstate(p).d[0], 0.22176, 1e-15);
  EXPECT_NEAR(w.c * 17.0 / 48.0, 0.3264, 1e-14);
}

TEST(Lhvt, DegenerateAtUnitWeight) {
  // Bell pair at s = 5/12 gives c = 1 exactly
  const auto w = lhvt_decompose(PrepParams(kInvSqrt2, 5.0 / 12.0));
  EXPECT_TRUE(w.degenerate);
  EXPECT_FALSE(w.feasible);
  EXPECT_TRUE(w.violates(LhvtConstraint::CRange));
}

TEST(Lhvt, SeparableInputHasNoWeight) {
  const auto w = lhvt_decompose(PrepParams(0.0, 0.5));
  EXPECT_EQ(w.c, 0.0);
  EXPECT_TRUE(w.violates(LhvtConstraint::CRange));
}

TEST(LhvtRegion, Examples) {
  EXPECT_TRUE(lhvt_region(PrepParams(kInvSqrt2, 0.38)));
  EXPECT_FALSE(lhvt_region(PrepParams(kInvSqrt2, 0.30)));
  EXPECT_FALSE(lhvt_region(PrepParams(0.2, 0.8)));
  EXPECT_TRUE(lhvt_decompose(PrepParams(0.2, 0.8)).violates(LhvtConstraint::D1Nonneg));
}

TEST(Lhvt, DecompositionReconstructsMappedState) {
  const auto barrett = barrett_state().matrix();
  std::size_t feasible = 0;
  for (int i = 1; i < 200; ++i)
    for (int j = 1; j < 200; ++j) {
      const PrepParams p(i / 200.0, j / 200.0);
      const auto w = lhvt_decompose(p);
      if (!w.feasible) continue;
      ++feasible;
      EXPECT_GT(w.c, 0.0);
      EXPECT_LT(w.c, 1.0);
      EXPECT_NEAR(w.sep_diag[0] + w.sep_diag[1] + w.sep_diag[2] + w.sep_diag[3], 1.0, 1e-9);
      const auto rebuilt = w.c * barrett + (1 - w.c) * CMatrix4::diagonal(w.sep_diag);
      EXPECT_LE(max_abs_diff(rebuilt, mapped_xstate(p).matrix()), 1e-10);
    }
  EXPECT_GT(feasible, 0u);
}

TEST(RegionScan, OrderingAndFlags) {
  const GridSpec grid{40, 50};
  const auto cells = region_scan(grid, 1);
  ASSERT_EQ(cells.size(), 2000u);
  EXPECT_DOUBLE_EQ(cells[0].a, 0.5 / 40);
  EXPECT_DOUBLE_EQ(cells[0].s, 0.5 / 50);
  EXPECT_DOUBLE_EQ(cells[1].s, 1.5 / 50);
  EXPECT_DOUBLE_EQ(cells[50].a, 1.5 / 40);
  for (const auto& c : cells) {
    if (c.chsh) { EXPECT_TRUE(c.entangled); }
    EXPECT_FALSE(c.chsh && c.lhvt);
    if (c.lhvt) { EXPECT_TRUE(c.entangled); }
    EXPECT_EQ(c.entangled, c.ef > 0.0);
  }
}

TEST(RegionScan, IndependentOfThreadCount) {
  const GridSpec grid{37, 23};
  const auto one = region_scan(grid, 1);
  const auto four = region_scan(grid, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    EXPECT_EQ(one[k].a, four[k].a);
    EXPECT_EQ(one[k].s, four[k].s);
    EXPECT_EQ(one[k].ef, four[k].ef);
    EXPECT_EQ(one[k].horodecki, four[k].horodecki);
    EXPECT_EQ(one[k].lhvt, four[k].lhvt);
  }
}

TEST(RegionScan, RejectsDegenerateGrid) { EXPECT_THROW(region_scan(GridSpec{1, 10}), InvalidArgument); }

TEST(RegionScan, LhvtRegionContainsWernerWindowPoint) {
  // (1/sqrt2, 0.38) lies in the region; the cell containing it on a fine grid
  // must be flagged as well.
  const GridSpec grid{200, 200};
  const auto cells = region_scan(grid, 2);
  bool any = false;
  for (const auto& c : cells) any = any || c.lhvt;
  EXPECT_TRUE(any);
  const auto i = static_cast<std::size_t>(kInvSqrt2 * 200);
  const auto j = static_cast<std::size_t>(0.38 * 200);
  EXPECT_TRUE(cells[i * 200 + j].lhvt) << cells[i * 200 + j].a << " " << cells[i * 200 + j].s;
}

TEST(ConstraintActivity, TwoDiagonalConstraintsNeverBind) {
  const auto act = lhvt_constraint_activity(GridSpec{200, 200});
  EXPECT_GT(act.feasible_cells, 0u);
  const auto idle = act.never_binding();
  ASSERT_EQ(idle.size(), 2u);
  // observed: the middle entries (|01>, |10>) stay well away from zero, the
  // outer ones shape the left and right edges of the region
  EXPECT_EQ(idle[0], LhvtConstraint::D2Nonneg);
  EXPECT_EQ(idle[1], LhvtConstraint::D3Nonneg);
  EXPECT_GT(act.min_slack[1], 0.1);
  EXPECT_GT(act.sole_violations[0], 0u);
  EXPECT_GT(act.sole_violations[3], 0u);
}
