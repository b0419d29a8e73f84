#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "platoon/perception/obstacle.hpp"
#include "platoon/world/track.hpp"

namespace platoon {
namespace {

LidarPoint point_at(double x, double y) {
  return {std::atan2(y, x), std::hypot(x, y)};
}

LidarScan scan_of(const std::vector<Vec2>& pts) {
  LidarScan s;
  for (const auto& p : pts) s.points.push_back(point_at(p.x, p.y));
  return s;
}

TEST(Clustering, SeparatedGroupsSplitAndSmallGroupsDrop) {
  std::vector<Vec2> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({1.0, -0.20 + 0.01 * i});
  for (int i = 0; i < 4; ++i) pts.push_back({1.5, 0.30 + 0.01 * i});
  pts.push_back({3.0, 1.0});                     // lone point
  pts.push_back({2.0, -1.0});                    // pair below min size
  pts.push_back({2.0, -0.95});
  const auto clusters = cluster_points(scan_of(pts), 0.08, 3);
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].points.size(), 6u);
  EXPECT_EQ(clusters[1].points.size(), 4u);
}

TEST(Clustering, ChainLinkageJoinsTouchingRuns) {
  std::vector<Vec2> pts;
  for (int i = 0; i < 10; ++i) pts.push_back({1.0, -0.3 + 0.07 * i});
  const auto clusters = cluster_points(scan_of(pts), 0.08, 3);
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].points.size(), 10u);
}

TEST(CircleFitting, StraightOnFaceGivesCenterOnFaceAndHalfWidthRadius) {
  PointCluster c;
  for (int i = 0; i <= 30; ++i) {
    c.points.push_back(point_at(1.2, -0.15 + 0.01 * i));
  }
  const CircleFit fit = fit_circle(c);
  EXPECT_NEAR(fit.center.x, 1.2, 1e-9);
  EXPECT_NEAR(fit.center.y, 0.0, 1e-9);
  EXPECT_NEAR(fit.radius, 0.15, 1e-9);
}

TEST(Tracker, SmoothingCutsMeasurementJitter) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0.0, 0.02);
  ObstacleTracker tracker;
  std::vector<double> raw, smoothed;
  for (int k = 0; k < 400; ++k) {
    CircleFit det;
    det.center = {1.2 + noise(rng), 0.0};
    det.radius = 0.15;
    tracker.update({det});
    if (k >= 20) {
      raw.push_back(det.center.x);
      smoothed.push_back(tracker.tracks().front().center.x);
    }
  }
  auto variance = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    m /= v.size();
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / v.size();
  };
  // First-order smoothing with weight 0.5 leaves 1/3 of the variance.
  EXPECT_LT(variance(smoothed), 0.55 * variance(raw));
  EXPECT_EQ(tracker.tracks().size(), 1u);
}

TEST(Tracker, JumpSpawnsNewTrackAndStaleTrackIsDropped) {
  ObstacleTracker tracker;
  CircleFit near;
  near.center = {1.2, 0.0};
  near.radius = 0.15;
  for (int k = 0; k < 5; ++k) tracker.update({near});
  ASSERT_EQ(tracker.tracks().size(), 1u);
  const int first_id = tracker.tracks().front().id;

  CircleFit far = near;
  far.center = {2.2, 0.0};
  tracker.update({far});
  ASSERT_EQ(tracker.tracks().size(), 2u);
  EXPECT_NE(tracker.tracks().back().id, first_id);
  EXPECT_EQ(tracker.primary()->id, first_id);  // nearest ahead wins

  // The jump update was already miss #1; the track survives through five
  // consecutive misses and drops on the sixth.
  for (int k = 0; k < 4; ++k) tracker.update({far});
  EXPECT_EQ(tracker.tracks().size(), 2u);
  tracker.update({far});
  ASSERT_EQ(tracker.tracks().size(), 1u);
  EXPECT_NE(tracker.tracks().front().id, first_id);
}

TEST(GapMeasurement, LiveScanChainMatchesWorldTruth) {
  const Track track = Track::stadium();
  const TruckGeometry geom;
  TruckPose ego;
  ego.tractor = track.pose_at(2.0);
  const double bumper_s = 2.0 + geom.bumper_forward();

  LidarSensor lidar({}, geom, 42);
  for (double gap : {0.6, 0.9, 1.2, 1.35}) {
    for (double lat : {0.0, 0.03}) {
      for (double yaw : {0.0, 0.05}) {
        TruckPose lead;
        lead.tractor = track.pose_at(bumper_s + gap + geom.trailer_length +
                                     geom.hitch_setback);
        lead.tractor.y += lat;
        lead.tractor.heading += yaw;
        std::vector<Segment2> outline;
        append_trailer_outline(lead, geom, outline);

        ObstacleTracker tracker;
        for (int k = 0; k < 10; ++k) {
          const LidarScan scan = lidar.scan(ego, outline, 0.0);
          std::vector<CircleFit> dets;
          for (const auto& c : cluster_points(scan)) {
            dets.push_back(fit_circle(c));
          }
          tracker.update(dets);
        }
        const auto est = gap_from_obstacle(tracker);
        ASSERT_TRUE(est.has_value())
            << "gap " << gap << " lat " << lat << " yaw " << yaw;
        EXPECT_NEAR(*est, gap, 0.05)
            << "gap " << gap << " lat " << lat << " yaw " << yaw;
      }
    }
  }
}

TEST(GapMeasurement, NoTargetsMeansNoGap) {
  ObstacleTracker tracker;
  tracker.update({});
  EXPECT_FALSE(gap_from_obstacle(tracker).has_value());
}

}  // namespace
}  // namespace platoon
