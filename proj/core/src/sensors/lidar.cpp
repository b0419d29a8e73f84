#include "platoon/sensors/lidar.hpp"

#include <cmath>
#include <limits>

namespace platoon {

namespace {

// Ray from `origin` along unit `dir` against segment ab; returns the hit
// distance or infinity.
double ray_segment(const Vec2& origin, const Vec2& dir, const Segment2& seg) {
  const Vec2 e = seg.b - seg.a;
  const double denom = dir.cross(e);
  if (std::abs(denom) < 1e-12) return std::numeric_limits<double>::infinity();
  const Vec2 ao = seg.a - origin;
  const double t = ao.cross(e) / denom;   // along the ray
  const double u = ao.cross(dir) / denom; // along the segment
  if (t < 0.0 || u < 0.0 || u > 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return t;
}

}  // namespace

void append_trailer_outline(const TruckPose& pose, const TruckGeometry& geom,
                            std::vector<Segment2>& out) {
  const Vec2 hitch = hitch_point(pose, geom);
  const double th = pose.trailer_heading();
  const Vec2 fwd{std::cos(th), std::sin(th)};
  const Vec2 left{-std::sin(th), std::cos(th)};
  const double hw = 0.5 * geom.trailer_width;
  const Vec2 front_l = hitch + left * hw;
  const Vec2 front_r = hitch - left * hw;
  const Vec2 rear_l = hitch - fwd * geom.trailer_length + left * hw;
  const Vec2 rear_r = hitch - fwd * geom.trailer_length - left * hw;
  out.push_back({rear_l, rear_r});   // rear face
  out.push_back({front_l, rear_l});  // left side
  out.push_back({front_r, rear_r});  // right side
  out.push_back({front_l, front_r}); // front face
}

LidarSensor::LidarSensor(const LidarConfig& cfg, const TruckGeometry& geom,
                         std::uint64_t seed)
    : cfg_(cfg), geom_(geom), noise_(seed) {}

LidarScan LidarSensor::scan(const TruckPose& ego,
                            const std::vector<Segment2>& targets, double t) {
  LidarScan out;
  out.t = t;
  const Vec2 origin = ego.tractor.local_point(geom_.lidar_forward, 0.0);
  const double step = cfg_.step_deg * kPi / 180.0;
  const double half = 0.5 * cfg_.fov_deg * kPi / 180.0;
  const int n = static_cast<int>(std::round(cfg_.fov_deg / cfg_.step_deg));
  out.points.reserve(16);
  for (int k = 0; k < n; ++k) {
    const double bearing = -half + (k + 0.5) * step;
    const double a = ego.tractor.heading + bearing;
    const Vec2 dir{std::cos(a), std::sin(a)};
    double best = std::numeric_limits<double>::infinity();
    for (const Segment2& seg : targets) {
      best = std::min(best, ray_segment(origin, dir, seg));
    }
    if (best <= cfg_.max_range) {
      double r = best + noise_.gauss(cfg_.sigma_r);
      if (r < 0.01) r = 0.01;
      out.points.push_back({bearing, r});
    }
  }
  return out;
}

}  // namespace platoon
