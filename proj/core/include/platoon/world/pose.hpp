#pragma once

#include <cmath>

namespace platoon {

constexpr double kPi = 3.14159265358979323846;

// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

struct Vec2 {
  double x{0.0};
  double y{0.0};

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // z-component of the 2D cross product; positive when `o` is to the left of *this.
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

// World pose: position plus heading (CCW from +x axis).
struct Pose2D {
  double x{0.0};
  double y{0.0};
  double heading{0.0};

  Vec2 position() const { return {x, y}; }
  Vec2 forward() const { return {std::cos(heading), std::sin(heading)}; }
  // Unit vector pointing to the left of the heading.
  Vec2 left() const { return {-std::sin(heading), std::cos(heading)}; }

  // Point at a forward/left offset from this pose, in world coordinates.
  Vec2 local_point(double fwd, double lft) const {
    return position() + forward() * fwd + left() * lft;
  }
};

// Express a world point in the frame of `ref`: x forward, y left.
Vec2 world_to_local(const Pose2D& ref, const Vec2& world_pt);

}  // namespace platoon
