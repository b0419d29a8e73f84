#pragma once

#include <optional>

#include "platoon/world/truck_geometry.hpp"

namespace platoon {

struct Mat3 {
  double m[3][3]{};

  static Mat3 identity();
  Mat3 operator*(const Mat3& o) const;
  Mat3 inverse() const;  // throws on a singular matrix
  // Projective application: (x, y, 1) -> dehomogenized (x', y').
  Vec2 apply(const Vec2& p) const;
};

struct CameraConfig {
  int width{640};
  int height{480};
  double hfov_deg{90.0};
  double noise_sigma{4.0};
  double rate_hz{30.0};
  // Raster intensities (8-bit): markings read bright, the trailer brighter.
  std::uint8_t ground_level{30};
  std::uint8_t marking_level{220};
  std::uint8_t trailer_level{255};
};

// Pinhole model fixed to the tractor; the ground frame has its origin on the
// ground below the front bumper, x forward, y left, z up.
class CameraModel {
 public:
  CameraModel(const CameraConfig& cfg, const TruckGeometry& geom);

  // Project a ground-frame 3D point; nullopt when behind the near plane.
  std::optional<Vec2> project(double x_fwd, double y_left, double z_up) const;

  // Ground-plane (z = 0) to pixel homography and its inverse.
  const Mat3& ground_to_image() const { return h_; }
  const Mat3& image_to_ground() const { return h_inv_; }

  double fx() const { return fx_; }
  double fy() const { return fy_; }
  double cx() const { return cx_; }
  double cy() const { return cy_; }
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_{0}, height_{0};
  double fx_{0}, fy_{0}, cx_{0}, cy_{0};
  double cam_h_{0};
  // Camera basis in ground coordinates (x_c right, y_c image-down, z_c optical).
  double xc_[3], yc_[3], zc_[3];
  Mat3 h_, h_inv_;
};

// Bird's-eye raster geometry. Row 0 is the far edge; depth is measured from
// the front bumper, 490 rows per metre by calibration of the warp.
struct BevSpec {
  int width{240};
  int height{784};
  double px_per_m_forward{490.0};
  double px_per_m_lateral{150.0};

  double depth_of_row(double row) const {
    return (height - row) / px_per_m_forward;
  }
  double row_of_depth(double d) const {
    return height - d * px_per_m_forward;
  }
  double lateral_of_col(double col) const {
    return (0.5 * width - col - 0.5) / px_per_m_lateral;
  }
  double col_of_lateral(double y_left) const {
    return 0.5 * width - 0.5 - y_left * px_per_m_lateral;
  }
};

}  // namespace platoon
