#pragma once

#include <optional>

#include "platoon/sensors/camera.hpp"

namespace platoon {

// Freezes a camera stream from a programmed instant onward: frames sampled
// before `at_time` pass through untouched, and the first frame sampled at or
// after `at_time` is captured whole (pixels, noise, frame_id, timestamp) and
// returned for every subsequent sample. Downstream consumers therefore see a
// bitwise-repeating image, exactly like a wedged capture pipeline.
class CameraFreezeInjector {
 public:
  // An injector with no trigger time is a passthrough forever.
  CameraFreezeInjector() = default;
  explicit CameraFreezeInjector(double at_time) : at_time_(at_time) {}

  const CameraFrame& apply(const CameraFrame& live, double t) {
    if (at_time_ && t >= *at_time_ && !frozen_) frozen_ = live;
    return frozen_ ? *frozen_ : live;
  }

  bool active() const { return frozen_.has_value(); }
  std::optional<double> trigger_time() const { return at_time_; }

 private:
  std::optional<double> at_time_;
  std::optional<CameraFrame> frozen_;
};

}  // namespace platoon
