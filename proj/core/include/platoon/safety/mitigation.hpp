#pragma once

#include "platoon/control/lane_keeping.hpp"
#include "platoon/world/pose.hpp"

namespace platoon {

struct MitigationConfig {
  // Base steering schedule; the follow gain is a fixed fraction of its
  // offset gain so the degraded loop is gentler than normal lane keeping.
  GainSchedule base = GainSchedule::defaults();
  double gain_fraction = 0.5;
  double steer_limit = 0.35;  // rad
};

// Camera-out steering fallback: steer toward the tracked rear of the truck
// ahead using the lidar bearing alone. `target` is the tracked obstacle
// centre in the ego body frame (x forward, y left).
double mitigation_steering(const Vec2& target, double v,
                           const MitigationConfig& cfg = {});

}  // namespace platoon
