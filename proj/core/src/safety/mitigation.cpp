#include "platoon/safety/mitigation.hpp"

#include <algorithm>
#include <cmath>

namespace platoon {

double mitigation_steering(const Vec2& target, double v,
                           const MitigationConfig& cfg) {
  const double bearing = std::atan2(target.y, target.x);
  const double k_m = cfg.gain_fraction * cfg.base.gains_at(v).first;
  const double delta = k_m * bearing;  // steer toward the target
  return std::clamp(delta, -cfg.steer_limit, cfg.steer_limit);
}

}  // namespace platoon
