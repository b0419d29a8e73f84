#pragma once

#include "platoon/dynamics/motor_model.hpp"
#include "platoon/world/truck_geometry.hpp"

namespace platoon {

// Longitudinal + kinematic state of one tractor-trailer.
struct PlantState {
  TruckPose pose;
  double v{0.0};  // tractor speed, m/s
};

struct PlantParams {
  double lag_tau{0.3};             // first-order velocity lag, s
  double jackknife_limit{kPi / 2};  // |articulation| beyond this is a fault
};

struct PlantStepResult {
  bool jackknifed{false};
};

// Advance one control period: the motor command sets the lagged velocity
// target, the tractor follows a kinematic bicycle, and the trailer swings
// about the hitch. Position uses the pre-update velocity so a steady state
// advances exactly v*dt per step.
PlantStepResult step_plant(PlantState& s, const TruckGeometry& geom,
                           const MotorModel& motor, const PlantParams& params,
                           double u_command, double delta, double dt);

}  // namespace platoon
