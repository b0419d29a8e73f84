#pragma once

#include <cstdint>
#include <vector>

#include "platoon/sensors/camera.hpp"
#include "platoon/sensors/camera_model.hpp"

namespace platoon {

// Binary top-down image: row 0 is the far edge, the bottom row touches the
// front bumper. Pixels are 0 or 255.
struct BevImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> px;

  std::uint8_t at(int r, int c) const { return px[r * width + c]; }
};

// Projects camera frames onto the ground plane. The pixel mapping depends
// only on the camera intrinsics/mounting, so it is precomputed once; each
// frame is then blurred, resampled nearest-neighbour, and thresholded.
class BirdsEyeWarper {
 public:
  BirdsEyeWarper(const CameraModel& model, BevSpec spec = {});

  BevImage warp(const CameraFrame& frame) const;

  const BevSpec& spec() const { return spec_; }

 private:
  BevSpec spec_;
  int src_w_ = 0;
  int src_h_ = 0;
  std::uint8_t threshold_ = 128;
  std::vector<std::int32_t> src_index_;  // flattened source pixel, -1 = none
};

// 5x5 Gaussian blur (sigma = 1), edge rows/columns replicated.
void gaussian_blur_5x5(const std::uint8_t* src, std::uint8_t* dst, int w,
                       int h);

}  // namespace platoon
