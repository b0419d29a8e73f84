#pragma once

#include <optional>
#include <vector>

#include "platoon/sensors/lidar.hpp"
#include "platoon/world/pose.hpp"

namespace platoon {

struct PointCluster {
  std::vector<LidarPoint> points;  // ordered by bearing
};

// Single-linkage grouping: points closer than `eps` (Cartesian) join the
// same cluster; clusters smaller than `min_points` are discarded.
std::vector<PointCluster> cluster_points(const LidarScan& scan,
                                         double eps = 0.08,
                                         int min_points = 3);

// Circle through the two bearing-extreme points of the cluster, treated as
// a diameter. For the flat rear face of a vehicle this lands the centre on
// the face and the radius at half its visible width.
struct CircleFit {
  Vec2 center;  // sensor frame: x forward, y left
  double radius = 0.0;
};
CircleFit fit_circle(const PointCluster& cluster);

struct ObstacleTrackerConfig {
  double gate = 0.3;    // max centre distance to match a detection, m
  double alpha = 0.5;   // blend weight of the new measurement
  int max_missed = 5;   // drop a track after this many empty updates
};

struct TrackedObstacle {
  int id = 0;
  Vec2 center;
  double radius = 0.0;
  int age = 0;     // updates with a matched detection
  int missed = 0;  // consecutive updates without one
};

// Nearest-neighbour data association with exponential smoothing.
class ObstacleTracker {
 public:
  explicit ObstacleTracker(ObstacleTrackerConfig cfg = {});

  void update(const std::vector<CircleFit>& detections);

  const std::vector<TrackedObstacle>& tracks() const { return tracks_; }

  // The closest tracked obstacle ahead of the sensor, if any.
  std::optional<TrackedObstacle> primary() const;

 private:
  ObstacleTrackerConfig cfg_;
  std::vector<TrackedObstacle> tracks_;
  int next_id_ = 1;
};

// Bumper-to-body distance implied by the primary track. The lidar sits
// behind the bumper by the same length as the fitted radius of a
// straight-on vehicle face, so centre minus radius reads out directly.
std::optional<double> gap_from_obstacle(const ObstacleTracker& tracker);

}  // namespace platoon
