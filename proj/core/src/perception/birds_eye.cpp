#include "platoon/perception/birds_eye.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace platoon {

namespace {

// Integer weights for sigma = 1, normalised to sum 256.
constexpr int kBlurW[5] = {14, 62, 104, 62, 14};

}  // namespace

void gaussian_blur_5x5(const std::uint8_t* src, std::uint8_t* dst, int w,
                       int h) {
  std::vector<std::uint16_t> tmp(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    const std::uint8_t* row = src + static_cast<std::size_t>(r) * w;
    std::uint16_t* out = tmp.data() + static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) {
      std::uint32_t acc = 0;
      for (int k = -2; k <= 2; ++k) {
        const int cc = std::clamp(c + k, 0, w - 1);
        acc += static_cast<std::uint32_t>(kBlurW[k + 2]) * row[cc];
      }
      out[c] = static_cast<std::uint16_t>(acc);
    }
  }
  for (int r = 0; r < h; ++r) {
    std::uint8_t* out = dst + static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) {
      std::uint32_t acc = 0;
      for (int k = -2; k <= 2; ++k) {
        const int rr = std::clamp(r + k, 0, h - 1);
        acc += static_cast<std::uint32_t>(kBlurW[k + 2]) *
               tmp[static_cast<std::size_t>(rr) * w + c];
      }
      out[c] = static_cast<std::uint8_t>((acc + 32768) >> 16);
    }
  }
}

BirdsEyeWarper::BirdsEyeWarper(const CameraModel& model, BevSpec spec)
    : spec_(spec), src_w_(model.width()), src_h_(model.height()) {
  src_index_.assign(static_cast<std::size_t>(spec_.width) * spec_.height, -1);
  for (int r = 0; r < spec_.height; ++r) {
    const double depth = spec_.depth_of_row(r);
    for (int c = 0; c < spec_.width; ++c) {
      const double lateral = spec_.lateral_of_col(c);
      const auto px = model.project(depth, lateral, 0.0);
      if (!px) continue;
      const int u = static_cast<int>(std::lround(px->x));
      const int v = static_cast<int>(std::lround(px->y));
      if (u < 0 || u >= src_w_ || v < 0 || v >= src_h_) continue;
      src_index_[static_cast<std::size_t>(r) * spec_.width + c] =
          v * src_w_ + u;
    }
  }
}

BevImage BirdsEyeWarper::warp(const CameraFrame& frame) const {
  if (frame.width != src_w_ || frame.height != src_h_) {
    throw std::invalid_argument("frame size does not match warp map");
  }
  BevImage out;
  out.width = spec_.width;
  out.height = spec_.height;
  out.px.resize(src_index_.size());
  std::vector<std::uint8_t> blurred(frame.px.size());
  gaussian_blur_5x5(frame.px.data(), blurred.data(), frame.width,
                    frame.height);
  for (std::size_t i = 0; i < src_index_.size(); ++i) {
    const std::int32_t s = src_index_[i];
    out.px[i] = (s >= 0 && blurred[s] >= threshold_) ? 255 : 0;
  }
  return out;
}

}  // namespace platoon
