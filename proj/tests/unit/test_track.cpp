#include "platoon/world/track.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace platoon {
namespace {

// Independent oracle: the stadium centerline sampled at 1 mm, built from the
// analytic shape (not from Track). Nearest sample point gives distance; the
// sign comes from the local tangent.
class StadiumPolyline {
 public:
  StadiumPolyline(double straight = 12.0, double radius = 2.5) {
    const double step = 1e-3;
    for (double t = 0.0; t < straight; t += step) pts_.push_back({t, 0.0});
    for (double a = -kPi / 2; a < kPi / 2; a += step / radius) {
      pts_.push_back({straight + radius * std::cos(a),
                      radius + radius * std::sin(a)});
    }
    for (double t = 0.0; t < straight; t += step) {
      pts_.push_back({straight - t, 2.0 * radius});
    }
    for (double a = kPi / 2; a < 3.0 * kPi / 2; a += step / radius) {
      pts_.push_back({radius * std::cos(a), radius + radius * std::sin(a)});
    }
  }

  double signed_lateral(const Vec2& p) const {
    std::size_t best = 0;
    double best_d2 = 1e300;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      const double dx = p.x - pts_[i].x, dy = p.y - pts_[i].y;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    // Project onto the two segments that meet at the nearest vertex.
    double best_abs = 1e300, best_signed = 0.0;
    for (int k = -1; k <= 0; ++k) {
      const Vec2 a = pts_[(best + pts_.size() + k) % pts_.size()];
      const Vec2 b = pts_[(best + k + 1) % pts_.size()];
      const Vec2 ab = b - a;
      const double len2 = ab.dot(ab);
      const double t = std::clamp(len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0,
                                  0.0, 1.0);
      const Vec2 q = a + ab * t;
      const Vec2 off = p - q;
      const double d = off.norm();
      if (d < best_abs) {
        best_abs = d;
        best_signed = (ab.cross(off) >= 0.0 ? 1.0 : -1.0) * d;
      }
    }
    return best_signed;
  }

 private:
  std::vector<Vec2> pts_;
};

TEST(Track, StraightPoseAtArclength) {
  Track t({0, 0, 0}, 0.45);
  t.add_straight(5.0);
  const Pose2D p = t.pose_at(1.0);
  EXPECT_NEAR(p.x, 1.0, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
  EXPECT_NEAR(p.heading, 0.0, 1e-12);
}

TEST(Track, QuarterCirclePose) {
  Track t({0, 0, 0}, 0.45);
  t.add_arc(2.0, kPi / 2.0);
  const Pose2D p = t.pose_at(kPi);  // full quarter: length = R * pi/2 = pi
  EXPECT_NEAR(p.x, 2.0, 1e-9);
  EXPECT_NEAR(p.y, 2.0, 1e-9);
  EXPECT_NEAR(p.heading, kPi / 2.0, 1e-9);
}

TEST(Track, ClosedTrackWrapsArclength) {
  const Track t = Track::stadium();
  const Pose2D a = t.pose_at(1.0);
  const Pose2D b = t.pose_at(t.length() + 1.0);
  EXPECT_NEAR(a.x, b.x, 1e-9);
  EXPECT_NEAR(a.y, b.y, 1e-9);
  EXPECT_NEAR(a.heading, b.heading, 1e-9);
}

TEST(Track, StadiumClosesWithTinyResidual) {
  const Track t = Track::stadium();
  EXPECT_TRUE(t.closed());
  EXPECT_NEAR(t.length(), 2.0 * 12.0 + 2.0 * kPi * 2.5, 1e-9);
  const Pose2D end = t.pose_at(t.length() - 1e-12);
  EXPECT_NEAR(end.x, 0.0, 1e-6);
  EXPECT_NEAR(end.y, 0.0, 1e-6);
}

TEST(Track, PoseAtIsLipschitzInArclength) {
  const Track t = Track::stadium();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, t.length());
  for (int i = 0; i < 2000; ++i) {
    const double s1 = u(rng), s2 = u(rng);
    const Vec2 d = t.pose_at(s1).position() - t.pose_at(s2).position();
    // Chord length never exceeds arclength separation (mod wrap).
    double ds = std::abs(s1 - s2);
    ds = std::min(ds, t.length() - ds);
    EXPECT_LE(d.norm(), ds + 1e-9);
  }
}

TEST(Track, CurvatureValues) {
  Track t({0, 0, 0}, 0.45);
  t.add_straight(3.0);
  t.add_arc(2.0, kPi / 2.0);
  EXPECT_DOUBLE_EQ(t.curvature_at(1.0), 0.0);
  EXPECT_DOUBLE_EQ(t.curvature_at(3.0 + 0.5), 0.5);
}

TEST(Track, LateralErrorTrivialCases) {
  Track t({0, 0, 0}, 0.45);
  t.add_straight(10.0);
  EXPECT_NEAR(t.lateral_error({4.0, 0.0, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(t.lateral_error({4.0, 0.05, 0.0}), 0.05, 1e-12);
  EXPECT_NEAR(t.lateral_error({4.0, -0.07, 1.2}), -0.07, 1e-12);
}

TEST(Track, LateralErrorMatchesPolylineOracle) {
  const Track t = Track::stadium();
  const StadiumPolyline oracle;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> us(0.0, t.length());
  std::uniform_real_distribution<double> uo(-0.3, 0.3);
  for (int i = 0; i < 1000; ++i) {
    const double s = us(rng);
    const double off = uo(rng);
    const Pose2D on = t.pose_at(s);
    const Vec2 p = on.position() + on.left() * off;
    const double got = t.lateral_error({p.x, p.y, 0.0});
    const double want = oracle.signed_lateral(p);
    EXPECT_NEAR(got, want, 1e-4) << "s=" << s << " off=" << off;
  }
}

TEST(Track, ArclengthRoundTrip) {
  const Track t = Track::stadium();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.0, t.length() - 1e-6);
  for (int i = 0; i < 500; ++i) {
    const double s = us(rng);
    EXPECT_NEAR(t.arclength_of(t.pose_at(s)), s, 1e-6);
  }
}

TEST(Track, EmptyTrackIsAConfigurationError) {
  Track t({0, 0, 0}, 0.45);
  EXPECT_THROW(t.pose_at(0.0), std::logic_error);
  EXPECT_THROW(t.close(), std::logic_error);
  EXPECT_THROW(Track({0, 0, 0}, -1.0), std::invalid_argument);
}

TEST(Track, RefusesNonClosingLoop) {
  Track t({0, 0, 0}, 0.45);
  t.add_straight(1.0);
  EXPECT_THROW(t.close(), std::invalid_argument);
}

}  // namespace
}  // namespace platoon
