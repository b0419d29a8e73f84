#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "platoon/sensors/camera_model.hpp"
#include "platoon/sensors/rng.hpp"
#include "platoon/world/track.hpp"
#include "platoon/world/truck_geometry.hpp"

namespace platoon {

struct CameraFrame {
  int width{0};
  int height{0};
  std::uint32_t frame_id{0};
  double t{0.0};
  std::vector<std::uint8_t> px;  // row-major grayscale

  std::uint8_t at(int row, int col) const { return px[row * width + col]; }
  bool same_pixels(const CameraFrame& o) const {
    return width == o.width && height == o.height && px == o.px;
  }
};

// Forward renderer for one truck's windshield camera: lane markings over the
// next few metres of centerline, plus the lead trailer's rear face as a
// bright occluder. Per-pixel Gaussian noise comes from a counter-based
// stream, so frames depend only on (seed, frame_id, world state).
class CameraSensor {
 public:
  CameraSensor(const CameraConfig& cfg, const TruckGeometry& geom,
               const Track* track, std::uint64_t noise_seed);

  struct LeadView {
    TruckPose pose;
    TruckGeometry geom;
  };

  CameraFrame render(const TruckPose& ego, const std::optional<LeadView>& lead,
                     double t, std::uint32_t frame_id) const;

  const CameraModel& model() const { return model_; }
  const CameraConfig& config() const { return cfg_; }

 private:
  void draw_markings(CameraFrame& f, const TruckPose& ego) const;
  void draw_trailer(CameraFrame& f, const TruckPose& ego,
                    const LeadView& lead) const;
  void add_noise(CameraFrame& f, std::uint32_t frame_id) const;

  CameraConfig cfg_;
  TruckGeometry geom_;
  const Track* track_;
  CameraModel model_;
  GaussianByteTable noise_table_;
  std::uint64_t noise_seed_;
  double marking_halfwidth_{0.025};
  double draw_ahead_{3.0};
  double draw_behind_{0.4};
  double sample_step_{0.04};
  double trailer_face_height_{0.32};
};

// Debug/inspection dump (binary PGM).
void write_pgm(const CameraFrame& f, const std::string& path);

}  // namespace platoon
