#include "platoon/dynamics/motor_model.hpp"

#include <cmath>
#include <stdexcept>

namespace platoon {

MotorParams motor_params_for(Role role) {
  switch (role) {
    case Role::LV: return {-1.1446e-5, 0.048278, -47.94};
    case Role::FV1: return {-2.0975e-5, 0.08152, -76.87};
    case Role::FV2: return {-1.0444e-5, 0.043253, -42.3682};
  }
  return {};
}

MotorModel::MotorModel(const MotorParams& p) : params_(p) {
  if (!(p.a < 0.0)) throw std::invalid_argument("motor fit requires a < 0");
  const double disc = p.b * p.b - 4.0 * p.a * p.c;
  if (!(disc > 0.0)) {
    throw std::invalid_argument("motor fit has no zero-velocity command");
  }
  // With a < 0 the "+sqrt" branch over 2a yields the smaller root.
  u_floor_ = (-p.b + std::sqrt(disc)) / (2.0 * p.a);
  u_ceiling_ = -p.b / (2.0 * p.a);
  v_peak_ = (p.a * u_ceiling_ + p.b) * u_ceiling_ + p.c;
  if (!(v_peak_ > 0.0)) {
    throw std::invalid_argument("motor fit peak velocity must be positive");
  }
}

MotorModel::Eval MotorModel::velocity_at(double u) const {
  Eval out;
  if (u < u_floor_) {
    u = u_floor_;
    out.clamped = true;
  } else if (u > u_ceiling_) {
    u = u_ceiling_;
    out.clamped = true;
  }
  out.value = (params_.a * u + params_.b) * u + params_.c;
  // The floor root only holds to roundoff; snap the residual to exactly rest.
  if (out.value < 1e-9) out.value = 0.0;
  return out;
}

MotorModel::Eval MotorModel::command_for(double v) const {
  Eval out;
  if (v < 0.0) {
    v = 0.0;
    out.clamped = true;
  } else if (v > v_peak_) {
    out.value = u_ceiling_;
    out.clamped = true;
    return out;
  }
  const double disc = params_.b * params_.b - 4.0 * params_.a * (params_.c - v);
  out.value = (-params_.b + std::sqrt(std::max(disc, 0.0))) / (2.0 * params_.a);
  return out;
}

}  // namespace platoon
