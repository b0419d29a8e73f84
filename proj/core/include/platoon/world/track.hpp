#pragma once

#include <vector>

#include "platoon/world/pose.hpp"

namespace platoon {

// One piece of the centerline: a straight or a constant-curvature arc.
// Positive curvature turns left.
struct TrackSegment {
  enum class Kind { Straight, Arc };
  Kind kind{Kind::Straight};
  Pose2D start;        // entry pose, heading = travel direction
  double length{0.0};  // arc length along the centerline, m
  double curvature{0.0};
};

// Piecewise straight/arc centerline with a fixed lane width. Arclength 0 is
// the entry pose of the first segment; on a closed track arclengths wrap.
class Track {
 public:
  Track(const Pose2D& start, double lane_width);

  // Default proving ground: two straights joined by two half-circle arcs.
  static Track stadium(double straight_len = 12.0, double radius = 2.5,
                       double lane_width = 0.45);

  void add_straight(double length);
  // sweep > 0 turns left, < 0 right. radius must be > 0.
  void add_arc(double radius, double sweep);
  // Marks the track closed; throws if the end pose does not meet the start.
  void close(double tol = 1e-6);

  double length() const { return total_length_; }
  double lane_width() const { return lane_width_; }
  bool closed() const { return closed_; }
  const std::vector<TrackSegment>& segments() const { return segments_; }

  // Centerline pose at arclength s (wraps when closed, clamps otherwise).
  Pose2D pose_at(double s) const;
  double curvature_at(double s) const;

  // Signed distance from the centerline, positive to the left of travel.
  double lateral_error(const Pose2D& pose) const;
  // Arclength of the nearest centerline point (smallest s wins ties).
  double arclength_of(const Pose2D& pose) const;

 private:
  struct Nearest {
    double s{0.0};
    double signed_lateral{0.0};
    double abs_distance{0.0};
  };
  Nearest nearest_point(const Vec2& p) const;
  double normalize_s(double s) const;

  std::vector<TrackSegment> segments_;
  Pose2D start_;
  Pose2D end_;  // exit pose of the last segment
  double lane_width_{0.45};
  double total_length_{0.0};
  bool closed_{false};
};

}  // namespace platoon
