#include "platoon/dynamics/motor_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace platoon {
namespace {

double quad(const MotorParams& p, double u) {
  return (p.a * u + p.b) * u + p.c;
}

// Independent root finder: bisection on the rising branch [lo, vertex].
double bisect_command(const MotorParams& p, double target) {
  double lo = 500.0, hi = -p.b / (2.0 * p.a);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (quad(p, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Values frozen from the bisection oracle at authoring time.
struct Anchor {
  Role role;
  double u_zero;
  double u_for_1ms;
  double u_ceiling;
  double peak;
};
constexpr Anchor kAnchors[] = {
    {Role::LV, 1599.739141, 1694.307691, 2108.946357, 2.967856107},
    {Role::FV1, 1609.435227, 1690.744423, 1943.265793, 2.337513707},
    {Role::FV2, 1589.940886, 1702.755807, 2070.710456, 2.414019672},
};

TEST(MotorModel, MatchesBisectionOracleAndFrozenAnchors) {
  for (const Anchor& a : kAnchors) {
    const MotorModel m(motor_params_for(a.role));
    EXPECT_NEAR(m.command_floor(), bisect_command(m.params(), 0.0), 1e-6);
    EXPECT_NEAR(m.command_floor(), a.u_zero, 1e-3);
    EXPECT_NEAR(m.command_for(1.0).value, bisect_command(m.params(), 1.0), 1e-6);
    EXPECT_NEAR(m.command_for(1.0).value, a.u_for_1ms, 1e-3);
    EXPECT_NEAR(m.command_ceiling(), a.u_ceiling, 1e-3);
    EXPECT_NEAR(m.peak_velocity(), a.peak, 1e-6);
  }
}

TEST(MotorModel, ForwardInverseIdentityOnOperatingRange) {
  for (Role r : {Role::LV, Role::FV1, Role::FV2}) {
    const MotorModel m(motor_params_for(r));
    for (double v = 0.0; v <= 2.0; v += 0.001) {
      const auto cmd = m.command_for(v);
      EXPECT_FALSE(cmd.clamped);
      EXPECT_NEAR(m.velocity_at(cmd.value).value, v, 1e-6);
    }
  }
}

TEST(MotorModel, MonotoneOnRisingBranch) {
  for (Role r : {Role::LV, Role::FV1, Role::FV2}) {
    const MotorModel m(motor_params_for(r));
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double u = m.command_floor() +
                       (m.command_ceiling() - m.command_floor()) * i / 1000.0;
      const double v = m.velocity_at(u).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(MotorModel, ClampsAndFlagsOutOfRangeInputs) {
  const MotorModel m(motor_params_for(Role::LV));
  const auto low = m.velocity_at(m.command_floor() - 100.0);
  EXPECT_TRUE(low.clamped);
  EXPECT_NEAR(low.value, 0.0, 1e-9);

  const auto high = m.velocity_at(m.command_ceiling() + 500.0);
  EXPECT_TRUE(high.clamped);
  EXPECT_NEAR(high.value, m.peak_velocity(), 1e-9);

  const auto too_fast = m.command_for(m.peak_velocity() + 0.5);
  EXPECT_TRUE(too_fast.clamped);
  EXPECT_NEAR(too_fast.value, m.command_ceiling(), 1e-9);

  const auto backwards = m.command_for(-0.25);
  EXPECT_TRUE(backwards.clamped);
  EXPECT_NEAR(backwards.value, m.command_floor(), 1e-6);
}

TEST(MotorModel, RejectsNonPhysicalFits) {
  EXPECT_THROW(MotorModel({1e-5, 0.04, -40.0}), std::invalid_argument);
  EXPECT_THROW(MotorModel({-1e-5, 0.0, -40.0}), std::invalid_argument);
}

}  // namespace
}  // namespace platoon
