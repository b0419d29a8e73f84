#include "platoon/world/pose.hpp"

namespace platoon {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

Vec2 world_to_local(const Pose2D& ref, const Vec2& world_pt) {
  const Vec2 d = world_pt - ref.position();
  return {d.dot(ref.forward()), d.dot(ref.left())};
}

}  // namespace platoon
