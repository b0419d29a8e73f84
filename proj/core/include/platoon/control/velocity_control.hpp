#pragma once

#include "platoon/dynamics/motor_model.hpp"

namespace platoon {

struct VelocityControlConfig {
  double k_f = 1.0;    // feed-forward on the (saturated) reference
  double k_p = 0.8;    // proportional on the raw tracking error
  double k_i = 2.0;    // integral gain, error * ts accumulated
  double k_a = 1e-4;   // anti-windup: feeds back (saturated - raw) command
  double v_max = 2.0;  // velocity-domain command ceiling, m/s
  double ts = 0.02;    // controller period, s
};

// Velocity tracking loop. Produces a velocity-domain command (clamped to
// [0, v_max]) and the raw motor duty that realises it through the inverse
// of the calibrated motor curve. The anti-windup term keeps the integrator
// bounded while the command sits on the ceiling.
class VelocityController {
 public:
  VelocityController(const VelocityControlConfig& cfg, const MotorModel& motor)
      : cfg_(cfg), motor_(motor) {}

  struct Output {
    double motor_cmd = 0.0;  // duty units, what the plant consumes
    double u_sat = 0.0;      // velocity-domain command after the ceiling
    double u_raw = 0.0;      // before the ceiling (diagnostic / windup)
    double v_ref_sat = 0.0;  // reference after the ceiling; relayed downstream
  };

  Output step(double v_ref, double v_meas);

  void reset() {
    integ_ = 0.0;
    aw_ = 0.0;
  }

  const VelocityControlConfig& config() const { return cfg_; }

 private:
  VelocityControlConfig cfg_;
  MotorModel motor_;
  double integ_ = 0.0;  // running sum of k_i * err * ts, includes this step
  double aw_ = 0.0;     // running sum of k_a * (u_sat - u_raw), prior steps
};

}  // namespace platoon
