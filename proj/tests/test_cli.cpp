#include <gtest/gtest.h>

#include <sstream>

#include "inept/cli.hpp"

using namespace inept;
using namespace inept::cli;

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.2496), "0.2496");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.00113248749924e-8), "2.0011324875e-08");
  EXPECT_EQ(format_number(1e-6), "1e-06");
  EXPECT_EQ(number(1.0 / 3.0).dump(), "0.333333333333");
  EXPECT_TRUE(number(std::nan("")).is_null());
}

TEST(StateReport, BellUndisturbed) {
  const auto doc = state_report(0.707107, 1.0);
  EXPECT_NEAR(doc["concurrence"].get<double>(), 1.0, 1e-11);
  EXPECT_NEAR(doc["fidelity"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["version"], kVersion);
  EXPECT_EQ(doc["command"], "state");
  EXPECT_TRUE(doc["chsh_violated"].get<bool>());
}

TEST(StateReport, PointSixAtHalf) {
  const auto doc = state_report(0.6, 0.5);
  EXPECT_EQ(doc["concurrence"].get<double>(), 0.2496);
  EXPECT_EQ(doc["concurrence_general"].get<double>(), 0.2496);
  EXPECT_EQ(doc["fidelity"].get<double>(), 0.6544);
  EXPECT_EQ(doc["entanglement_of_formation"].get<double>(), 0.117311559086);
  EXPECT_EQ(doc["matrix"]["re"][0][3].get<double>(), 0.24);
  EXPECT_EQ(doc["matrix"]["re"][3][3].get<double>(), 0.5248);
  EXPECT_EQ(doc["config"]["a"].get<double>(), 0.6);
}

TEST(StateReport, SeparableInputHasNoLhvtQuestion) {
  const auto doc = state_report(0.0, 0.2);
  EXPECT_EQ(doc["concurrence"].get<double>(), 0.0);
  EXPECT_FALSE(doc["lhvt"]["applicable"].get<bool>());
  EXPECT_FALSE(doc["lhvt"]["in_region"].get<bool>());
}

TEST(StateReport, LhvtWindow) {
  const auto doc = state_report(kInvSqrt2, 0.38);
  EXPECT_TRUE(doc["lhvt"]["in_region"].get<bool>());
  EXPECT_TRUE(doc["lhvt"]["violated_constraints"].empty());
}

TEST(StateReport, ValidatesParameters) {
  EXPECT_THROW(state_report(1.2, 0.5), InvalidArgument);
  EXPECT_THROW(state_report(0.5, -1), InvalidArgument);
}

TEST(Fig2, DefaultGridAndColumns) {
  const auto t = fig2_table(Fig2Config{});
  ASSERT_EQ(t.rows.size(), 200u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"S", "EF_max_numeric", "EF_eq7", "EF_bell", "EF_a0.1"}));
  EXPECT_DOUBLE_EQ(std::get<double>(t.rows.front()[0]), 0.005);
  EXPECT_DOUBLE_EQ(std::get<double>(t.rows[1][0]), 0.010);
  const auto& last = t.rows.back();
  EXPECT_EQ(std::get<double>(last[0]), 1.0);
  EXPECT_NEAR(std::get<double>(last[1]), 1.0, 1e-12);
  EXPECT_TRUE(std::holds_alternative<std::monostate>(last[2]));
  EXPECT_NEAR(std::get<double>(last[3]), 1.0, 1e-12);
}

TEST(Fig2, BellCurveVanishesUpToOneThird) {
  const auto t = fig2_table(Fig2Config{});
  for (const auto& row : t.rows) {
    const double s = std::get<double>(row[0]);
    if (s <= 1.0 / 3.0) { EXPECT_EQ(std::get<double>(row[3]), 0.0) << s; }
    if (s > 1.0 / 3.0) { EXPECT_GT(std::get<double>(row[3]), 0.0) << s; }
    // the optimum dominates both fixed preparations
    EXPECT_GE(std::get<double>(row[1]) + 1e-15, std::get<double>(row[3]));
    EXPECT_GE(std::get<double>(row[1]) + 1e-15, std::get<double>(row[4]));
  }
  // at exactly S = 1/3 the Bell curve is zero as well
  EXPECT_EQ(entanglement_of_formation(concurrence_xstate(PrepParams(kInvSqrt2, 1.0 / 3.0))), 0.0);
}

TEST(Fig2, NumericCurveIsMonotone) {
  const auto t = fig2_table(Fig2Config{});
  double prev = -1;
  for (const auto& row : t.rows) {
    const double v = std::get<double>(row[1]);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Fig2, CurveSubset) {
  Fig2Config cfg;
  cfg.s_points = 4;
  cfg.curves = {parse_fig2_curve("bell")};
  const auto csv = to_csv(fig2_table(cfg));
  EXPECT_EQ(csv, "S,EF_bell\n0.25,0\n0.5,0.117618873771\n0.75,0.498973021615\n1,1\n");
  EXPECT_THROW(parse_fig2_curve("nope"), InvalidArgument);
}

TEST(Fig3, CellsAndFlags) {
  const auto t = fig3_table(GridSpec{200, 200}, 2);
  ASSERT_EQ(t.rows.size(), 40000u);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"a", "S", "EF", "entangled", "chsh", "lhvt"}));
  bool lhvt_any = false;
  for (const auto& row : t.rows) {
    const double s = std::get<double>(row[1]);
    const bool chsh = std::get<bool>(row[4]);
    const bool lhvt = std::get<bool>(row[5]);
    if (s < 0.70) { EXPECT_FALSE(chsh); }
    EXPECT_FALSE(chsh && lhvt);
    lhvt_any = lhvt_any || lhvt;
  }
  EXPECT_TRUE(lhvt_any);
}

TEST(Fig3, NamedCells) {
  // cells are evaluated at arbitrary points through the same predicates
  const PrepParams bell_high(kInvSqrt2, 0.9);
  EXPECT_GT(concurrence_xstate(bell_high), 0.0);
  EXPECT_NEAR(horodecki_m(apply_map(psi_a(kInvSqrt2), 0.9)), 1.62, 1e-14);
  EXPECT_FALSE(lhvt_region(bell_high));
  EXPECT_FALSE(violates_chsh(apply_map(psi_a(kInvSqrt2), 0.38)));
  EXPECT_TRUE(lhvt_region(PrepParams(kInvSqrt2, 0.38)));
  EXPECT_EQ(concurrence_xstate(PrepParams(0.05, 0.01)), 0.0);
}

TEST(Fig3, CsvShape) {
  const auto csv = to_csv(fig3_table(GridSpec{2, 2}, 1));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,S,EF,entangled,chsh,lhvt");
  std::getline(in, line);
  EXPECT_EQ(line, "0.25,0.25,0.00364522979099,1,0,0");  // C = 2(S v - (1-S) v^2) > 0 here
  std::getline(in, line);
  EXPECT_EQ(line, "0.25,0.75,0.187714126766,1,1,0");  // CHSH boundary at a = 0.25 is 0.727
}

TEST(Tables, JsonCarriesConfigAndVersion) {
  Fig2Config cfg;
  cfg.s_points = 2;
  const auto doc = to_json(fig2_table(cfg), "fig2", fig2_config_json(cfg));
  EXPECT_EQ(doc["version"], kVersion);
  EXPECT_EQ(doc["config"]["s_points"], 2);
  EXPECT_EQ(doc["rows"].size(), 2u);
  EXPECT_TRUE(doc["rows"][1][2].is_null());  // eq7 undefined at S = 1
}

TEST(Bounds, Survival) {
  BoundsQuery q;
  q.survival_a = 0.707107;
  const auto doc = bounds_report(q);
  EXPECT_NEAR(doc["survival"]["threshold"].get<double>(), 1.0 / 3.0, 1e-6);
  EXPECT_LT(doc["survival"]["bisection_delta"].get<double>(), 1e-11);
  EXPECT_EQ(doc["survival"]["method"], "analytic");
}

TEST(Bounds, Chsh) {
  BoundsQuery q;
  q.chsh_a = kInvSqrt2;
  const auto doc = bounds_report(q);
  EXPECT_NEAR(doc["chsh"]["threshold"].get<double>(), kInvSqrt2, 1e-11);
  EXPECT_LT(doc["chsh"]["bisection_delta"].get<double>(), 1e-8);
}

TEST(Bounds, Eisert) {
  BoundsQuery q;
  q.eisert_n = 2;
  const auto doc = bounds_report(q);
  EXPECT_NEAR(doc["eisert"]["lower_bound"].get<double>(), 2 * entanglement_of_formation(0.25), 1e-11);
}

TEST(Bounds, NeedsAQuery) { EXPECT_THROW(bounds_report(BoundsQuery{}), InvalidArgument); }

TEST(Bounds, PropagatesDomainErrors) {
  BoundsQuery q;
  q.survival_a = 0.0;
  EXPECT_THROW(bounds_report(q), UndefinedThreshold);
  BoundsQuery e;
  e.eisert_n = 1;
  EXPECT_THROW(bounds_report(e), InvalidArgument);
}

TEST(Simulation, ReportShape) {
  const auto rep = simulate_pair_state(DeliveryModel::permutation(4), 0.6, 1000, 7);
  const auto doc = simulation_report(rep);
  EXPECT_EQ(doc["config"]["model"], "permutation");
  EXPECT_EQ(doc["config"]["n"], 4);
  EXPECT_EQ(doc["effective_s"].get<double>(), 0.25);
  EXPECT_EQ(doc["rng_algorithm"], kRngAlgorithm);
  EXPECT_EQ(doc["basis_settings"].size(), 9u);
  EXPECT_EQ(doc["basis_settings"][0]["setting"], "xx");
}
