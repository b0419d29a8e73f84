#include "platoon/control/velocity_control.hpp"

#include <algorithm>

namespace platoon {

VelocityController::Output VelocityController::step(double v_ref,
                                                    double v_meas) {
  Output out;
  out.v_ref_sat = std::clamp(v_ref, 0.0, cfg_.v_max);
  const double err = v_ref - v_meas;
  integ_ += cfg_.k_i * err * cfg_.ts;
  out.u_raw = cfg_.k_f * out.v_ref_sat + cfg_.k_p * err + integ_ + aw_;
  out.u_sat = std::clamp(out.u_raw, 0.0, cfg_.v_max);
  aw_ += cfg_.k_a * (out.u_sat - out.u_raw);
  out.motor_cmd = motor_.command_for(out.u_sat).value;
  return out;
}

}  // namespace platoon
