#include "platoon/sensors/camera_model.hpp"

#include <cmath>
#include <stdexcept>

namespace platoon {

Mat3 Mat3::identity() {
  Mat3 r;
  r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
  return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    }
  }
  return r;
}

Mat3 Mat3::inverse() const {
  const double a = m[0][0], b = m[0][1], c = m[0][2];
  const double d = m[1][0], e = m[1][1], f = m[1][2];
  const double g = m[2][0], h = m[2][1], i = m[2][2];
  const double det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  if (std::abs(det) < 1e-300) throw std::runtime_error("singular homography");
  Mat3 r;
  r.m[0][0] = (e * i - f * h) / det;
  r.m[0][1] = (c * h - b * i) / det;
  r.m[0][2] = (b * f - c * e) / det;
  r.m[1][0] = (f * g - d * i) / det;
  r.m[1][1] = (a * i - c * g) / det;
  r.m[1][2] = (c * d - a * f) / det;
  r.m[2][0] = (d * h - e * g) / det;
  r.m[2][1] = (b * g - a * h) / det;
  r.m[2][2] = (a * e - b * d) / det;
  return r;
}

Vec2 Mat3::apply(const Vec2& p) const {
  const double X = m[0][0] * p.x + m[0][1] * p.y + m[0][2];
  const double Y = m[1][0] * p.x + m[1][1] * p.y + m[1][2];
  const double W = m[2][0] * p.x + m[2][1] * p.y + m[2][2];
  return {X / W, Y / W};
}

CameraModel::CameraModel(const CameraConfig& cfg, const TruckGeometry& geom) {
  width_ = cfg.width;
  height_ = cfg.height;
  fx_ = 0.5 * cfg.width / std::tan(0.5 * cfg.hfov_deg * kPi / 180.0);
  fy_ = fx_;
  cx_ = 0.5 * cfg.width - 0.5;
  cy_ = 0.5 * cfg.height - 0.5;
  cam_h_ = geom.camera_height;

  const double cp = std::cos(geom.camera_pitch);
  const double sp = std::sin(geom.camera_pitch);
  // Ground frame is (fwd, left, up); camera x right, y image-down, z optical.
  xc_[0] = 0.0; xc_[1] = -1.0; xc_[2] = 0.0;
  yc_[0] = -sp; yc_[1] = 0.0;  yc_[2] = -cp;
  zc_[0] = cp;  zc_[1] = 0.0;  zc_[2] = -sp;

  // Homography for z = 0: columns are the images of (1,0,0), (0,1,0) and the
  // camera-relative origin (0,0,-h), composed with the intrinsics.
  Mat3 ext;
  const double* basis[3] = {xc_, yc_, zc_};
  for (int r = 0; r < 3; ++r) {
    ext.m[r][0] = basis[r][0];
    ext.m[r][1] = basis[r][1];
    ext.m[r][2] = basis[r][2] * -cam_h_;
  }
  Mat3 k = Mat3::identity();
  k.m[0][0] = fx_; k.m[0][2] = cx_;
  k.m[1][1] = fy_; k.m[1][2] = cy_;
  h_ = k * ext;
  h_inv_ = h_.inverse();
}

std::optional<Vec2> CameraModel::project(double x_fwd, double y_left,
                                         double z_up) const {
  const double q[3] = {x_fwd, y_left, z_up - cam_h_};
  const double Z = q[0] * zc_[0] + q[1] * zc_[1] + q[2] * zc_[2];
  if (Z < 0.05) return std::nullopt;
  const double X = q[0] * xc_[0] + q[1] * xc_[1] + q[2] * xc_[2];
  const double Y = q[0] * yc_[0] + q[1] * yc_[1] + q[2] * yc_[2];
  return Vec2{cx_ + fx_ * X / Z, cy_ + fy_ * Y / Z};
}

}  // namespace platoon
