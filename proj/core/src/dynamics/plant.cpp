#include "platoon/dynamics/plant.hpp"

#include <cmath>

namespace platoon {

PlantStepResult step_plant(PlantState& s, const TruckGeometry& geom,
                           const MotorModel& motor, const PlantParams& params,
                           double u_command, double delta, double dt) {
  PlantStepResult out;
  const double v = s.v;
  const double heading = s.pose.tractor.heading;
  const double yaw_rate = v * std::tan(delta) / geom.wheelbase;

  s.pose.tractor.x += v * std::cos(heading) * dt;
  s.pose.tractor.y += v * std::sin(heading) * dt;
  s.pose.tractor.heading = wrap_angle(heading + yaw_rate * dt);

  // Hitch sits behind the rear axle, so tractor yaw also drags the trailer.
  const double alpha = s.pose.articulation;
  const double lt = geom.trailer_wheelbase;
  const double alpha_rate =
      -v * std::sin(alpha) / lt -
      yaw_rate * (1.0 + geom.hitch_setback * std::cos(alpha) / lt);
  s.pose.articulation = alpha + alpha_rate * dt;
  if (std::abs(s.pose.articulation) >= params.jackknife_limit) {
    out.jackknifed = true;
  }

  // Exact discretization of v' = (target - v)/tau.
  const double target = motor.velocity_at(u_command).value;
  const double decay = std::exp(-dt / params.lag_tau);
  s.v = target + (v - target) * decay;
  return out;
}

}  // namespace platoon
