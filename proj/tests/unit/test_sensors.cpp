#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "platoon/sensors/camera.hpp"
#include "platoon/sensors/encoder.hpp"
#include "platoon/sensors/lidar.hpp"

namespace platoon {
namespace {

CameraConfig small_camera(double sigma) {
  CameraConfig c;
  c.width = 320;
  c.height = 240;
  c.noise_sigma = sigma;
  return c;
}

// Independent trigonometric row prediction for a ground point at forward
// distance d below a camera of height h pitched down by phi.
double expected_row(const CameraConfig& cfg, const TruckGeometry& g, double d) {
  const double fy = 0.5 * cfg.width / std::tan(0.5 * cfg.hfov_deg * kPi / 180.0);
  const double cy = 0.5 * cfg.height - 0.5;
  const double h = g.camera_height, phi = g.camera_pitch;
  return cy + fy * (h * std::cos(phi) - d * std::sin(phi)) /
                  (d * std::cos(phi) + h * std::sin(phi));
}

TEST(CameraModel, HomographyRoundTripIsExact) {
  const CameraConfig cfg = small_camera(0.0);
  const TruckGeometry geom;
  const CameraModel m(cfg, geom);
  for (double x = 0.3; x <= 1.6; x += 0.1) {
    for (double y = -0.6; y <= 0.6; y += 0.1) {
      const Vec2 px = m.ground_to_image().apply({x, y});
      const Vec2 back = m.image_to_ground().apply(px);
      EXPECT_NEAR(back.x, x, 1e-9);
      EXPECT_NEAR(back.y, y, 1e-9);
      const auto direct = m.project(x, y, 0.0);
      ASSERT_TRUE(direct.has_value());
      EXPECT_NEAR(px.x, direct->x, 1e-9);
      EXPECT_NEAR(px.y, direct->y, 1e-9);
    }
  }
}

TEST(CameraModel, OpticalAxisHitsGroundAtImageCenter) {
  const CameraConfig cfg = small_camera(0.0);
  const TruckGeometry geom;
  const CameraModel m(cfg, geom);
  const double d = geom.camera_height / std::tan(geom.camera_pitch);
  const auto px = m.project(d, 0.0, 0.0);
  ASSERT_TRUE(px.has_value());
  EXPECT_NEAR(px->x, m.cx(), 1e-9);
  EXPECT_NEAR(px->y, m.cy(), 1e-9);
}

TEST(CameraSensor, MarkingsAreSymmetricOnAStraight) {
  const Track track = Track::stadium();
  const TruckGeometry geom;
  const CameraSensor cam(small_camera(0.0), geom, &track, 1);
  TruckPose ego;
  ego.tractor = track.pose_at(2.0);
  const CameraFrame f = cam.render(ego, std::nullopt, 0.0, 0);

  double sum_col = 0.0;
  long count = 0;
  const double horizon =
      expected_row(cam.config(), geom, 1e9);  // far-field limit row
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) {
      if (f.at(r, c) == cam.config().marking_level) {
        sum_col += c;
        ++count;
        EXPECT_GT(r, horizon - 1.0);
      }
    }
  }
  ASSERT_GT(count, 500);
  EXPECT_NEAR(sum_col / count, 0.5 * f.width - 0.5, 0.7);
}

TEST(CameraSensor, TrailerBottomEdgeRowMatchesTrigonometry) {
  const Track track = Track::stadium();
  const TruckGeometry geom;
  const CameraSensor cam(small_camera(0.0), geom, &track, 1);
  TruckPose ego;
  ego.tractor = track.pose_at(2.0);

  for (double gap : {0.6, 0.8, 1.2}) {
    CameraSensor::LeadView lead;
    lead.geom = geom;
    // Lead trailer rear face `gap` ahead of the ego bumper, on the straight.
    const double rear_s = 2.0 + geom.bumper_forward() + gap;
    lead.pose.tractor =
        track.pose_at(rear_s + geom.trailer_length + geom.hitch_setback);
    const CameraFrame f = cam.render(ego, lead, 0.0, 0);
    int bottom = -1;
    for (int r = f.height - 1; r >= 0 && bottom < 0; --r) {
      for (int c = 0; c < f.width; ++c) {
        if (f.at(r, c) == cam.config().trailer_level) {
          bottom = r;
          break;
        }
      }
    }
    ASSERT_GE(bottom, 0) << "gap " << gap;
    EXPECT_NEAR(bottom, expected_row(cam.config(), geom, gap), 1.5)
        << "gap " << gap;
  }
}

TEST(CameraSensor, OcclusionGrowsMonotonicallyAsGapShrinks) {
  const Track track = Track::stadium();
  const TruckGeometry geom;
  const CameraSensor cam(small_camera(0.0), geom, &track, 1);
  TruckPose ego;
  ego.tractor = track.pose_at(2.0);

  std::set<int> prev;
  for (double gap = 1.5; gap >= 0.35; gap -= 0.1) {
    CameraSensor::LeadView lead;
    lead.geom = geom;
    const double rear_s = 2.0 + geom.bumper_forward() + gap;
    lead.pose.tractor =
        track.pose_at(rear_s + geom.trailer_length + geom.hitch_setback);
    const CameraFrame f = cam.render(ego, lead, 0.0, 0);
    std::set<int> occluded;
    for (int i = 0; i < static_cast<int>(f.px.size()); ++i) {
      if (f.px[i] == cam.config().trailer_level) occluded.insert(i);
    }
    for (int i : prev) {
      EXPECT_TRUE(occluded.count(i)) << "pixel uncovered at gap " << gap;
    }
    prev = std::move(occluded);
  }
}

TEST(CameraSensor, NoiseIsDeterministicPerSeedAndFrame) {
  const Track track = Track::stadium();
  const TruckGeometry geom;
  const CameraSensor cam_a(small_camera(4.0), geom, &track, 99);
  const CameraSensor cam_b(small_camera(4.0), geom, &track, 99);
  TruckPose ego;
  ego.tractor = track.pose_at(2.0);
  const CameraFrame f1 = cam_a.render(ego, std::nullopt, 0.0, 7);
  const CameraFrame f2 = cam_b.render(ego, std::nullopt, 0.0, 7);
  EXPECT_TRUE(f1.same_pixels(f2));
  const CameraFrame f3 = cam_a.render(ego, std::nullopt, 0.0, 8);
  EXPECT_FALSE(f1.same_pixels(f3));
}

TEST(Lidar, PerpendicularRearFaceClusterCountAndDepth) {
  const TruckGeometry geom;
  LidarSensor lidar({.sigma_r = 0.0}, geom, 5);
  TruckPose ego;  // lidar at (lidar_forward, 0), heading +x
  // Rear face 1.2 m ahead of the lidar, width 0.3.
  const std::vector<Segment2> wall = {
      {{geom.lidar_forward + 1.2, -0.15}, {geom.lidar_forward + 1.2, 0.15}}};
  const LidarScan scan = lidar.scan(ego, wall, 0.0);
  // 2*atan(0.15/1.2) / 0.5 deg = 28.5 beams; the half-step grid yields 28.
  EXPECT_EQ(scan.points.size(), 28u);
  for (const auto& p : scan.points) {
    EXPECT_NEAR(p.forward(), 1.2, 1e-9);
  }
}

TEST(Lidar, OffsetWallMeanBearing) {
  const TruckGeometry geom;
  LidarSensor lidar({.sigma_r = 0.0}, geom, 5);
  TruckPose ego;
  const std::vector<Segment2> wall = {
      {{geom.lidar_forward + 1.2, -0.05}, {geom.lidar_forward + 1.2, 0.25}}};
  const LidarScan scan = lidar.scan(ego, wall, 0.0);
  ASSERT_FALSE(scan.points.empty());
  double mean = 0.0;
  for (const auto& p : scan.points) mean += p.bearing;
  mean /= scan.points.size();
  EXPECT_NEAR(mean, std::atan2(0.1, 1.2), 1.0 * kPi / 180.0);
}

TEST(Lidar, EmptyWorldAndRangeCap) {
  const TruckGeometry geom;
  LidarSensor lidar({.sigma_r = 0.0}, geom, 5);
  TruckPose ego;
  EXPECT_TRUE(lidar.scan(ego, {}, 0.0).points.empty());
  const std::vector<Segment2> far_wall = {{{26.0, -5.0}, {26.0, 5.0}}};
  EXPECT_TRUE(lidar.scan(ego, far_wall, 0.0).points.empty());
}

TEST(Lidar, RangeNoiseRespectsThreeSigmaStatistically) {
  const TruckGeometry geom;
  LidarSensor lidar({.sigma_r = 0.01}, geom, 5);
  TruckPose ego;
  const std::vector<Segment2> wall = {
      {{geom.lidar_forward + 1.2, -0.15}, {geom.lidar_forward + 1.2, 0.15}}};
  long n = 0, shorter = 0;
  for (int i = 0; i < 400; ++i) {
    const LidarScan scan = lidar.scan(ego, wall, 0.0);
    for (const auto& p : scan.points) {
      ++n;
      const double true_r = 1.2 / std::cos(p.bearing);
      if (p.range < true_r - 3.0 * 0.01) ++shorter;
    }
  }
  ASSERT_GT(n, 10000);
  EXPECT_LT(static_cast<double>(shorter) / n, 0.005);
}

TEST(Lidar, DeterministicPerSeed) {
  const TruckGeometry geom;
  LidarSensor a({}, geom, 123), b({}, geom, 123);
  TruckPose ego;
  const std::vector<Segment2> wall = {
      {{geom.lidar_forward + 1.0, -0.2}, {geom.lidar_forward + 1.0, 0.2}}};
  for (int i = 0; i < 20; ++i) {
    const LidarScan sa = a.scan(ego, wall, 0.0);
    const LidarScan sb = b.scan(ego, wall, 0.0);
    ASSERT_EQ(sa.points.size(), sb.points.size());
    for (std::size_t j = 0; j < sa.points.size(); ++j) {
      ASSERT_DOUBLE_EQ(sa.points[j].range, sb.points[j].range);
    }
  }
}

TEST(Encoder, QuantizationAndRestBehaviour) {
  NormalStream rng(1);
  const EncoderConfig cfg;
  EXPECT_DOUBLE_EQ(encoder_read(0.0, cfg, rng), 0.0);

  const EncoderConfig noiseless{.quantum = 0.005, .sigma_v = 0.0};
  EXPECT_DOUBLE_EQ(encoder_read(1.0, noiseless, rng), 1.0);
  EXPECT_DOUBLE_EQ(encoder_read(1.0023, noiseless, rng), 1.0);
  EXPECT_DOUBLE_EQ(encoder_read(1.0026, noiseless, rng), 1.005);
}

TEST(Encoder, NoisyReadsStayNearTruthAndOnTheGrid) {
  NormalStream rng(2);
  const EncoderConfig cfg;
  double sum = 0.0;
  long outliers = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double r = encoder_read(1.0, cfg, rng);
    sum += r;
    if (std::abs(r - 1.0) > 3.0 * cfg.sigma_v + cfg.quantum) ++outliers;
    const double rem = std::remainder(r, cfg.quantum);
    EXPECT_NEAR(rem, 0.0, 1e-9);
  }
  EXPECT_NEAR(sum / n, 1.0, 0.001);
  EXPECT_LT(static_cast<double>(outliers) / n, 0.01);
}

}  // namespace
}  // namespace platoon
