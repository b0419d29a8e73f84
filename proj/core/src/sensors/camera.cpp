#include "platoon/sensors/camera.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace platoon {

namespace {

// Fill a convex quad given in pixel coordinates (set, not blend: later draws
// occlude earlier ones).
void fill_quad(CameraFrame& f, const Vec2 q[4], std::uint8_t level) {
  double ymin = q[0].y, ymax = q[0].y;
  for (int i = 1; i < 4; ++i) {
    ymin = std::min(ymin, q[i].y);
    ymax = std::max(ymax, q[i].y);
  }
  const int r0 = std::max(0, static_cast<int>(std::ceil(ymin - 0.5)));
  const int r1 = std::min(f.height - 1, static_cast<int>(std::floor(ymax - 0.5)));
  for (int r = r0; r <= r1; ++r) {
    const double yc = r + 0.5;
    double xl = 1e300, xr = -1e300;
    for (int i = 0; i < 4; ++i) {
      const Vec2& a = q[i];
      const Vec2& b = q[(i + 1) % 4];
      if ((a.y <= yc && b.y > yc) || (b.y <= yc && a.y > yc)) {
        const double x = a.x + (b.x - a.x) * (yc - a.y) / (b.y - a.y);
        xl = std::min(xl, x);
        xr = std::max(xr, x);
      }
    }
    if (xl > xr) continue;
    const int c0 = std::max(0, static_cast<int>(std::ceil(xl - 0.5)));
    const int c1 = std::min(f.width - 1, static_cast<int>(std::floor(xr - 0.5)));
    if (c0 > c1) continue;
    std::uint8_t* row = f.px.data() + static_cast<std::size_t>(r) * f.width;
    std::fill(row + c0, row + c1 + 1, level);
  }
}

}  // namespace

CameraSensor::CameraSensor(const CameraConfig& cfg, const TruckGeometry& geom,
                           const Track* track, std::uint64_t noise_seed)
    : cfg_(cfg),
      geom_(geom),
      track_(track),
      model_(cfg, geom),
      noise_table_(cfg.noise_sigma),
      noise_seed_(noise_seed) {
  if (track_ == nullptr) throw std::invalid_argument("camera needs a track");
}

CameraFrame CameraSensor::render(const TruckPose& ego,
                                 const std::optional<LeadView>& lead, double t,
                                 std::uint32_t frame_id) const {
  CameraFrame f;
  f.width = cfg_.width;
  f.height = cfg_.height;
  f.frame_id = frame_id;
  f.t = t;
  f.px.assign(static_cast<std::size_t>(cfg_.width) * cfg_.height,
              cfg_.ground_level);
  draw_markings(f, ego);
  if (lead) draw_trailer(f, ego, *lead);
  if (cfg_.noise_sigma > 0.0) add_noise(f, frame_id);
  return f;
}

void CameraSensor::draw_markings(CameraFrame& f, const TruckPose& ego) const {
  const Vec2 bumper = front_bumper(ego, geom_);
  const Pose2D cam_ref{bumper.x, bumper.y, ego.tractor.heading};
  const double s0 = track_->arclength_of(ego.tractor);
  const double half_lane = 0.5 * track_->lane_width();

  for (const double side : {+1.0, -1.0}) {
    bool have_prev = false;
    Vec2 prev_in, prev_out;
    bool prev_ok = false;
    for (double ds = -draw_behind_; ds <= draw_ahead_; ds += sample_step_) {
      const Pose2D cl = track_->pose_at(s0 + ds);
      const Vec2 in_w =
          cl.position() + cl.left() * (side * (half_lane - marking_halfwidth_));
      const Vec2 out_w =
          cl.position() + cl.left() * (side * (half_lane + marking_halfwidth_));
      const Vec2 in_l = world_to_local(cam_ref, in_w);
      const Vec2 out_l = world_to_local(cam_ref, out_w);
      const auto in_px = model_.project(in_l.x, in_l.y, 0.0);
      const auto out_px = model_.project(out_l.x, out_l.y, 0.0);
      const bool ok = in_px.has_value() && out_px.has_value();
      if (have_prev && prev_ok && ok) {
        const Vec2 quad[4] = {prev_in, prev_out, *out_px, *in_px};
        fill_quad(f, quad, cfg_.marking_level);
      }
      if (ok) {
        prev_in = *in_px;
        prev_out = *out_px;
      }
      prev_ok = ok;
      have_prev = true;
    }
  }
}

void CameraSensor::draw_trailer(CameraFrame& f, const TruckPose& ego,
                                const LeadView& lead) const {
  const Vec2 bumper = front_bumper(ego, geom_);
  const Pose2D cam_ref{bumper.x, bumper.y, ego.tractor.heading};

  // Ground-plane corners of the lead trailer box (same box the lidar sees).
  const Vec2 hitch = hitch_point(lead.pose, lead.geom);
  const double th = lead.pose.trailer_heading();
  const Vec2 fwd{std::cos(th), std::sin(th)};
  const Vec2 left{-std::sin(th), std::cos(th)};
  const double hw = 0.5 * lead.geom.trailer_width;
  const Vec2 front_l = hitch + left * hw;
  const Vec2 front_r = hitch - left * hw;
  const Vec2 rear_l = front_l - fwd * lead.geom.trailer_length;
  const Vec2 rear_r = front_r - fwd * lead.geom.trailer_length;

  // Draws one vertical face, subdivided along its ground edge so a face that
  // leaves the view frustum degrades strip by strip instead of vanishing.
  const auto draw_face = [&](const Vec2& a_w, const Vec2& b_w) {
    constexpr int kStrips = 8;
    const Vec2 a = world_to_local(cam_ref, a_w);
    const Vec2 b = world_to_local(cam_ref, b_w);
    for (int i = 0; i < kStrips; ++i) {
      const double u0 = static_cast<double>(i) / kStrips;
      const double u1 = static_cast<double>(i + 1) / kStrips;
      const Vec2 g0 = a + (b - a) * u0;
      const Vec2 g1 = a + (b - a) * u1;
      const auto p0 = model_.project(g0.x, g0.y, 0.0);
      const auto p1 = model_.project(g1.x, g1.y, 0.0);
      const auto p2 = model_.project(g1.x, g1.y, trailer_face_height_);
      const auto p3 = model_.project(g0.x, g0.y, trailer_face_height_);
      if (!p0 || !p1 || !p2 || !p3) continue;
      const Vec2 quad[4] = {*p0, *p1, *p2, *p3};
      fill_quad(f, quad, cfg_.trailer_level);
    }
  };

  // A face of the (convex) box is visible when the camera sits on its
  // outward side. At most one side face can be visible together with the
  // rear face; the rear face is nearer, so it is drawn last and wins any
  // overlap from the set-not-blend fill.
  const Vec2 cam_w{bumper.x, bumper.y};
  if ((cam_w - front_l).dot(fwd) > 0.0) draw_face(front_l, front_r);
  if ((cam_w - front_l).dot(left) > 0.0) draw_face(rear_l, front_l);
  if ((cam_w - front_r).dot(left) < 0.0) draw_face(rear_r, front_r);
  if ((cam_w - rear_l).dot(fwd) < 0.0) draw_face(rear_l, rear_r);
}

void CameraSensor::add_noise(CameraFrame& f, std::uint32_t frame_id) const {
  const std::uint64_t base = mix64(noise_seed_, frame_id);
  const std::size_t n = f.px.size();
  std::uint8_t* px = f.px.data();
  for (std::size_t i = 0; i < n; i += 4) {
    std::uint64_t ctr = base + (i >> 2);
    const std::uint64_t r = splitmix64(ctr);
    const std::size_t lim = std::min<std::size_t>(4, n - i);
    for (std::size_t j = 0; j < lim; ++j) {
      const auto u16 = static_cast<std::uint16_t>(r >> (16 * j));
      const int v = px[i + j] + noise_table_.at(u16);
      px[i + j] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
}

void write_pgm(const CameraFrame& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  std::fprintf(fp, "P5\n%d %d\n255\n", f.width, f.height);
  std::fwrite(f.px.data(), 1, f.px.size(), fp);
  std::fclose(fp);
}

}  // namespace platoon
