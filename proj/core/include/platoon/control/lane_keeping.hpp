#pragma once

#include <utility>
#include <vector>

#include "platoon/perception/lane_detect.hpp"

namespace platoon {

// Speed-indexed steering gains, linearly interpolated and clamped at the
// grid ends. Speeds must increase strictly; gains must be positive.
struct GainSchedule {
  std::vector<double> speeds;
  std::vector<double> k;    // gain on the at-truck lateral error
  std::vector<double> k_l;  // gain on the lookahead (preview) error

  void validate() const;

  // {K, K_L} at speed v.
  std::pair<double, double> gains_at(double v) const;

  static GainSchedule defaults();
};

struct LaneKeepingConfig {
  GainSchedule schedule = GainSchedule::defaults();
  double steer_limit = 0.35;  // rad
};

// delta = -K(v) * e - K_L(v) * e_L, clamped to the actuator limit.
// Positive steering turns left; a truck left of the path (positive errors)
// therefore steers right. The preview term doubles as implicit curvature
// feed-forward because the lookahead error leads the at-truck error on arcs.
class LaneKeepingController {
 public:
  explicit LaneKeepingController(LaneKeepingConfig cfg = {});

  double step(const LaneEstimate& est, double v) const;

  const LaneKeepingConfig& config() const { return cfg_; }

 private:
  LaneKeepingConfig cfg_;
};

}  // namespace platoon
