#pragma once

#include <cstdint>

#include "platoon/world/pose.hpp"

namespace platoon {

enum class Role : std::uint8_t { LV = 0, FV1 = 1, FV2 = 2 };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::LV: return "LV";
    case Role::FV1: return "FV1";
    case Role::FV2: return "FV2";
  }
  return "?";
}

// 1/14-scale tractor-trailer dimensions. The kinematic reference point is the
// tractor rear axle; everything else is an offset from it.
struct TruckGeometry {
  double wheelbase{0.26};        // rear axle -> front axle
  double front_overhang{0.06};   // front axle -> front bumper
  double hitch_setback{0.05};    // rear axle -> hitch, behind the axle
  double trailer_length{0.80};   // hitch -> trailer rear face
  double trailer_wheelbase{0.72};  // hitch -> trailer axle
  double trailer_width{0.30};
  double tractor_width{0.24};
  double camera_forward{0.32};   // camera above the front bumper
  double camera_height{0.25};
  double camera_pitch{0.26};     // rad, down
  // Lidar sits inside the cab, behind the bumper by half the trailer width so
  // ranges to a rear face, less the fitted circle radius, read as bumper gap.
  double lidar_forward{0.17};

  double bumper_forward() const { return wheelbase + front_overhang; }
};

// Tractor pose plus hitch articulation. The trailer heading is
// tractor heading + articulation (positive = trailer swung left).
struct TruckPose {
  Pose2D tractor;
  double articulation{0.0};

  double trailer_heading() const {
    return wrap_angle(tractor.heading + articulation);
  }
};

inline Vec2 front_bumper(const TruckPose& p, const TruckGeometry& g) {
  return p.tractor.local_point(g.bumper_forward(), 0.0);
}

inline Vec2 hitch_point(const TruckPose& p, const TruckGeometry& g) {
  return p.tractor.local_point(-g.hitch_setback, 0.0);
}

inline Vec2 trailer_rear_center(const TruckPose& p, const TruckGeometry& g) {
  const Vec2 h = hitch_point(p, g);
  const double th = p.trailer_heading();
  return {h.x - g.trailer_length * std::cos(th),
          h.y - g.trailer_length * std::sin(th)};
}

// Corners of the trailer rear face, looking from behind: left then right.
inline void trailer_rear_corners(const TruckPose& p, const TruckGeometry& g,
                                 Vec2& left, Vec2& right) {
  const Vec2 c = trailer_rear_center(p, g);
  const double th = p.trailer_heading();
  const Vec2 lat{-std::sin(th), std::cos(th)};
  left = c + lat * (0.5 * g.trailer_width);
  right = c - lat * (0.5 * g.trailer_width);
}

}  // namespace platoon
