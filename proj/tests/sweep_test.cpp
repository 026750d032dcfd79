#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ringopto/sweep.hpp"
#include "test_support.hpp"

namespace ringopto {
namespace {

SweepSpec temperature_sweep(int count) {
  SweepSpec s;
  s.base = reference_parameters();
  s.axis = Axis::T;
  s.min = 1e-6;
  s.max = 1e-3;
  s.count = count;
  s.quantities = standard_quantities();
  return s;
}

TEST(Quantity, StandardLabels) {
  std::vector<std::string> labels;
  for (const auto& q : standard_quantities()) labels.push_back(q.label);
  const std::vector<std::string> expected{"E_m1_m2", "E_m1_op", "E_m2_op", "E_m1_a", "E_m2_a",
                                          "E_op_a",  "T_m1m2a", "T_am1op", "T_am2op", "T_m1m2op"};
  EXPECT_EQ(labels, expected);
}

TEST(Quantity, ParseRoundTrip) {
  for (const auto& q : standard_quantities()) {
    const Quantity parsed = parse_quantity(q.label);
    EXPECT_EQ(parsed.label, q.label);
    EXPECT_EQ(parsed.kind, q.kind);
    EXPECT_EQ(parsed.partition, q.partition);
  }
  const Quantity split = parse_quantity("B_m1_m2a");
  EXPECT_EQ(split.kind, Quantity::Kind::split);
  EXPECT_EQ(split.partition, ModePartition::split(Mode::m1, Mode::m2, Mode::a));
}

TEST(Quantity, RejectsBadLabels) {
  for (const char* bad : {"", "E_m1", "E_m1_m1", "E_m1_xx", "T_m1m2", "T_m1m1a", "X_m1_m2", "B_m1_m2", "Em1_m2"})
    EXPECT_THROW(parse_quantity(bad), InvalidSweep) << bad;
}

TEST(Axis, ParseNames) {
  EXPECT_EQ(parse_axis("Delta_a"), Axis::Delta_a);
  EXPECT_EQ(parse_axis("T"), Axis::T);
  EXPECT_THROW(parse_axis("temperature"), InvalidSweep);
  EXPECT_THROW(parse_axis("kappa"), InvalidSweep);
}

TEST(Grid, LinearEndpointsAreExact) {
  SweepSpec s = temperature_sweep(7);
  s.min = 0.1;
  s.max = 0.7;
  EXPECT_EQ(grid_value(s, 0), 0.1);
  EXPECT_EQ(grid_value(s, 6), 0.7);
  for (int k = 1; k < 6; ++k) EXPECT_EQ(grid_value(s, k), 0.1 + k * (0.7 - 0.1) / 6);
}

TEST(Grid, Logarithmic) {
  SweepSpec s = temperature_sweep(4);
  s.scale = Scale::logarithmic;
  s.min = 1e-6;
  s.max = 1e-3;
  EXPECT_EQ(grid_value(s, 0), 1e-6);
  EXPECT_NEAR(grid_value(s, 1), 1e-5, 1e-18);
  EXPECT_NEAR(grid_value(s, 2), 1e-4, 1e-17);
  EXPECT_EQ(grid_value(s, 3), 1e-3);
}

TEST(Validate, RejectsBadSpecs) {
  SweepSpec s = temperature_sweep(3);
  s.count = 1;
  EXPECT_THROW(run_sweep(s), InvalidSweep);
  s = temperature_sweep(3);
  s.max = s.min;
  EXPECT_THROW(run_sweep(s), InvalidSweep);
  s = temperature_sweep(3);
  s.scale = Scale::logarithmic;
  s.min = 0.0;
  EXPECT_THROW(run_sweep(s), InvalidSweep);
}

TEST(RunSweep, RowCountAndGrid) {
  const SweepSpec s = temperature_sweep(9);
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 9u);
  for (int k = 0; k < 9; ++k) {
    EXPECT_EQ(rows[k].axis_value, grid_value(s, k));
    EXPECT_TRUE(rows[k].stable);
    EXPECT_EQ(rows[k].values.size(), s.quantities.size());
  }
}

TEST(RunSweep, NarrowIntervalGivesNearlyEqualRows) {
  SweepSpec s = temperature_sweep(2);
  s.quantities = {pair_quantity(Mode::m1, Mode::a)};
  s.max = 1e-4;
  s.min = s.max - 1e-12;
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].values[0], rows[1].values[0], 1e-9);
}

TEST(RunSweep, ThreadCountDoesNotChangeOutput) {
  SweepSpec s = temperature_sweep(24);
  const auto serial = run_sweep(s, 1);
  const auto parallel = run_sweep(s, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].axis_value, parallel[k].axis_value);
    EXPECT_EQ(serial[k].values, parallel[k].values);
  }
  EXPECT_EQ(run_sweep(s, 1)[5].values, serial[5].values);
}

TEST(RunSweep, UnstablePointsAreFlagged) {
  // Blue-detuned drive: the optomechanical parametric gain overwhelms the
  // mechanical damping once the power is high enough.
  SweepSpec s;
  s.base = reference_parameters();
  s.base.delta = -s.base.omega_m;
  s.axis = Axis::P;
  s.min = 0.0;
  s.max = 35e-3;
  s.count = 8;
  s.quantities = standard_quantities();
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_TRUE(rows.front().stable);
  EXPECT_FALSE(rows.back().stable);
  for (const auto& r : rows) EXPECT_EQ(r.values.empty(), !r.stable);
}

TEST(RunSweep, InvalidPointCarriesAxisValue) {
  SweepSpec s = temperature_sweep(3);
  s.min = -1e-3;
  s.max = 1e-3;
  try {
    run_sweep(s);
    FAIL() << "expected SweepPointError";
  } catch (const SweepPointError& e) {
    EXPECT_EQ(e.axis_value(), -1e-3);
  }
}

TEST(RunSweep, NormalizedAtomicDetuning) {
  SweepSpec s;
  s.base = reference_parameters();
  s.axis = Axis::Delta_a;
  s.normalize_axis = true;
  s.min = -2.0;
  s.max = 2.0;
  s.count = 5;
  s.quantities = {pair_quantity(Mode::m1, Mode::a)};
  const auto rows = run_sweep(s);

  PhysicalParams p = s.base;
  p.delta_a = -1.0 * p.omega_m;
  const PointReport direct = evaluate_point(p, s.quantities);
  EXPECT_EQ(rows[1].axis_value, -1.0);
  EXPECT_EQ(rows[1].values, direct.values);
}

TEST(RunSweep, MirrorSwapLeavesValuesUnchanged) {
  SweepSpec s = temperature_sweep(12);
  s.axis = Axis::T;
  s.max = 2e-3;
  s.base.squeeze_r = 0.3;
  SweepSpec swapped = s;
  for (auto& q : swapped.quantities) {
    for (auto& m : q.partition.modes) {
      if (m == Mode::m1) m = Mode::m2;
      else if (m == Mode::m2) m = Mode::m1;
    }
  }
  const auto a = run_sweep(s);
  const auto b = run_sweep(swapped);
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < s.quantities.size(); ++i)
      ASSERT_NEAR(a[k].values[i], b[k].values[i], 1e-8) << s.quantities[i].label << " row " << k;
}

TEST(RunSweep, ZeroClipping) {
  EXPECT_EQ(clip_zero(5e-13), 0.0);
  EXPECT_EQ(clip_zero(2e-12), 2e-12);

  SweepSpec s = temperature_sweep(3);
  s.base.g_a = 0.0;
  s.base.power = 0.0;
  for (const auto& row : run_sweep(s))
    for (double v : row.values) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace ringopto
