#pragma once

#include <vector>

#include "platoon/sensors/rng.hpp"
#include "platoon/world/truck_geometry.hpp"

namespace platoon {

struct LidarConfig {
  double fov_deg{60.0};     // total forward window
  double step_deg{0.5};
  double max_range{25.0};
  double sigma_r{0.01};
};

struct LidarPoint {
  double bearing{0.0};  // rad, positive to the left
  double range{0.0};    // m, from the lidar mount

  double forward() const { return range * std::cos(bearing); }
  double lateral() const { return range * std::sin(bearing); }
};

struct LidarScan {
  double t{0.0};
  std::vector<LidarPoint> points;  // ordered by bearing
};

struct Segment2 {
  Vec2 a, b;
};

// World-frame outline of a truck's trailer box, for ray casting.
void append_trailer_outline(const TruckPose& pose, const TruckGeometry& geom,
                            std::vector<Segment2>& out);

// Single-beam lidar behind the bumper: rays at (k + 0.5) * step across the
// window, so beams sit strictly inside the field of view.
class LidarSensor {
 public:
  LidarSensor(const LidarConfig& cfg, const TruckGeometry& geom,
              std::uint64_t seed);

  LidarScan scan(const TruckPose& ego, const std::vector<Segment2>& targets,
                 double t);

  const LidarConfig& config() const { return cfg_; }

 private:
  LidarConfig cfg_;
  TruckGeometry geom_;
  NormalStream noise_;
};

}  // namespace platoon
