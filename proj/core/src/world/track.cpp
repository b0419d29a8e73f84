#include "platoon/world/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace platoon {

namespace {

Pose2D advance_along(const TrackSegment& seg, double ds) {
  if (seg.kind == TrackSegment::Kind::Straight) {
    const Vec2 p = seg.start.position() + seg.start.forward() * ds;
    return {p.x, p.y, seg.start.heading};
  }
  const double radius = 1.0 / std::abs(seg.curvature);
  const Vec2 center =
      seg.start.position() + seg.start.left() * (1.0 / seg.curvature);
  const double swept = seg.curvature * ds;
  const Vec2 r0 = seg.start.position() - center;
  const double c = std::cos(swept), s = std::sin(swept);
  const Vec2 r{r0.x * c - r0.y * s, r0.x * s + r0.y * c};
  (void)radius;
  return {center.x + r.x, center.y + r.y,
          wrap_angle(seg.start.heading + swept)};
}

}  // namespace

Track::Track(const Pose2D& start, double lane_width)
    : start_(start), end_(start), lane_width_(lane_width) {
  if (!(lane_width > 0.0)) {
    throw std::invalid_argument("track lane width must be positive");
  }
}

Track Track::stadium(double straight_len, double radius, double lane_width) {
  Track t({0.0, 0.0, 0.0}, lane_width);
  t.add_straight(straight_len);
  t.add_arc(radius, kPi);
  t.add_straight(straight_len);
  t.add_arc(radius, kPi);
  t.close();
  return t;
}

void Track::add_straight(double length) {
  if (closed_) throw std::logic_error("track already closed");
  if (!(length > 0.0)) throw std::invalid_argument("segment length must be > 0");
  segments_.push_back({TrackSegment::Kind::Straight, end_, length, 0.0});
  end_ = advance_along(segments_.back(), length);
  total_length_ += length;
}

void Track::add_arc(double radius, double sweep) {
  if (closed_) throw std::logic_error("track already closed");
  if (!(radius > 0.0)) throw std::invalid_argument("arc radius must be > 0");
  if (sweep == 0.0) throw std::invalid_argument("arc sweep must be nonzero");
  const double curvature = (sweep > 0.0 ? 1.0 : -1.0) / radius;
  const double length = std::abs(sweep) * radius;
  segments_.push_back({TrackSegment::Kind::Arc, end_, length, curvature});
  end_ = advance_along(segments_.back(), length);
  total_length_ += length;
}

void Track::close(double tol) {
  if (segments_.empty()) throw std::logic_error("cannot close an empty track");
  const double residual = (end_.position() - start_.position()).norm() +
                          std::abs(wrap_angle(end_.heading - start_.heading));
  if (residual >= tol) {
    throw std::invalid_argument("track does not close: residual " +
                                std::to_string(residual));
  }
  closed_ = true;
}

double Track::normalize_s(double s) const {
  if (closed_) {
    s = std::fmod(s, total_length_);
    if (s < 0.0) s += total_length_;
    return s;
  }
  return std::clamp(s, 0.0, total_length_);
}

Pose2D Track::pose_at(double s) const {
  if (segments_.empty()) throw std::logic_error("empty track");
  s = normalize_s(s);
  double acc = 0.0;
  for (const auto& seg : segments_) {
    if (s <= acc + seg.length || &seg == &segments_.back()) {
      return advance_along(seg, std::clamp(s - acc, 0.0, seg.length));
    }
    acc += seg.length;
  }
  return end_;
}

double Track::curvature_at(double s) const {
  if (segments_.empty()) throw std::logic_error("empty track");
  s = normalize_s(s);
  double acc = 0.0;
  for (const auto& seg : segments_) {
    if (s <= acc + seg.length || &seg == &segments_.back()) {
      return seg.curvature;
    }
    acc += seg.length;
  }
  return 0.0;
}

Track::Nearest Track::nearest_point(const Vec2& p) const {
  if (segments_.empty()) throw std::logic_error("empty track");
  Nearest best;
  best.abs_distance = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (const auto& seg : segments_) {
    double t = 0.0;
    if (seg.kind == TrackSegment::Kind::Straight) {
      const Vec2 d = p - seg.start.position();
      t = std::clamp(d.dot(seg.start.forward()), 0.0, seg.length);
    } else {
      const Vec2 center =
          seg.start.position() + seg.start.left() * (1.0 / seg.curvature);
      const Vec2 rv = p - center;
      if (rv.norm() < 1e-12) {
        t = 0.0;  // at the arc center every point is equidistant; take entry
      } else {
        const Vec2 r0 = seg.start.position() - center;
        const double theta0 = std::atan2(r0.y, r0.x);
        const double thetap = std::atan2(rv.y, rv.x);
        // Angle travelled from the entry, measured in the turn direction.
        double swept = thetap - theta0;
        if (seg.curvature < 0.0) swept = -swept;
        swept = std::fmod(swept, 2.0 * kPi);
        if (swept < 0.0) swept += 2.0 * kPi;
        const double sweep_total = std::abs(seg.curvature) * seg.length;
        if (swept <= sweep_total) {
          t = swept / std::abs(seg.curvature);
        } else {
          // Off the arc's angular span: nearer endpoint wins.
          const Vec2 pe = advance_along(seg, seg.length).position();
          const Vec2 ps = seg.start.position();
          t = ((p - ps).norm() <= (p - pe).norm()) ? 0.0 : seg.length;
        }
      }
    }
    const Pose2D on = advance_along(seg, t);
    const Vec2 off = p - on.position();
    const double dist = off.norm();
    const double s_here = acc + t;
    if (dist < best.abs_distance - 1e-12 ||
        (std::abs(dist - best.abs_distance) <= 1e-12 && s_here < best.s)) {
      best.abs_distance = dist;
      best.s = s_here;
      best.signed_lateral = on.forward().cross(off);
    }
    acc += seg.length;
  }
  return best;
}

double Track::lateral_error(const Pose2D& pose) const {
  return nearest_point(pose.position()).signed_lateral;
}

double Track::arclength_of(const Pose2D& pose) const {
  double s = nearest_point(pose.position()).s;
  if (closed_ && s >= total_length_) s -= total_length_;
  return s;
}

}  // namespace platoon
