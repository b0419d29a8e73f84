#pragma once

#include "platoon/world/truck_geometry.hpp"

namespace platoon {

// Steady-state velocity response of one truck's drivetrain to a raw motor
// command u: f(u) = a*u^2 + b*u + c with a < 0. Only the rising branch
// between the zero-velocity root and the vertex is used.
struct MotorParams {
  double a{-1.1446e-5};
  double b{0.048278};
  double c{-47.94};
};

// Per-truck calibration constants (each vehicle's drivetrain differs).
MotorParams motor_params_for(Role role);

class MotorModel {
 public:
  explicit MotorModel(const MotorParams& p);

  struct Eval {
    double value{0.0};
    bool clamped{false};  // input fell outside the usable interval
  };

  // Lowest command that produces forward motion (f = 0).
  double command_floor() const { return u_floor_; }
  // Command at the parabola vertex; beyond it the fit is non-physical.
  double command_ceiling() const { return u_ceiling_; }
  double peak_velocity() const { return v_peak_; }
  const MotorParams& params() const { return params_; }

  // Velocity produced by command u; u is clamped into [floor, ceiling].
  Eval velocity_at(double u) const;
  // Command that produces velocity v; v is clamped into [0, peak].
  Eval command_for(double v) const;

 private:
  MotorParams params_;
  double u_floor_{0.0};
  double u_ceiling_{0.0};
  double v_peak_{0.0};
};

}  // namespace platoon
