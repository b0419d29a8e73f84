#pragma once

#include "platoon/sensors/camera.hpp"

namespace platoon {

struct WatchdogConfig {
  // Number of consecutive identical frame-to-frame comparisons required
  // before the stream is declared stuck.
  int identical_needed = 5;
  // Below this speed a static scene is expected, so identical frames are
  // not evidence of a fault.
  double v_eps = 0.05;  // m/s
};

// Detects a wedged camera by comparing each newly sampled frame against the
// previous one. Live sensor noise makes healthy consecutive frames differ,
// so a run of bit-identical frames while the truck is moving can only come
// from a stuck pipeline. The verdict latches: once tripped it stays tripped.
class FrameWatchdog {
 public:
  explicit FrameWatchdog(WatchdogConfig cfg = {}) : cfg_(cfg) {}

  // Feed one camera sample (call once per camera period) with the truck's
  // current speed. Returns the latched verdict.
  bool update(const CameraFrame& frame, double v) {
    if (tripped_) return true;
    if (has_last_ && frame.same_pixels(last_)) {
      ++identical_;
    } else {
      identical_ = 0;
    }
    last_ = frame;
    has_last_ = true;
    if (identical_ >= cfg_.identical_needed && v > cfg_.v_eps) {
      tripped_ = true;
    }
    return tripped_;
  }

  bool tripped() const { return tripped_; }
  int identical_run() const { return identical_; }

 private:
  WatchdogConfig cfg_;
  CameraFrame last_;
  bool has_last_ = false;
  int identical_ = 0;
  bool tripped_ = false;
};

}  // namespace platoon
