#pragma once

#include <algorithm>

namespace platoon {

struct GapControlConfig {
  double k_p = 0.5;      // on the spacing error, (m/s)/m
  double k_d = 0.1;      // on its rate
  double ts = 0.02;      // s
  double v_r_max = 1.4;  // ceiling on the produced velocity reference, m/s
};

// Spacing loop of a follower: turns the predecessor's (saturated) velocity
// reference plus the measured gap into this truck's velocity reference.
// Positive error = closer than desired = slow down.
class GapController {
 public:
  explicit GapController(const GapControlConfig& cfg = {}) : cfg_(cfg) {}

  double step(double v_pred_ff, double d_ref, double d_meas) {
    const double err = d_ref - d_meas;
    if (!has_prev_) {
      prev_err_ = err;  // no rate contribution on the first tick
      has_prev_ = true;
    }
    const double rate = (err - prev_err_) / cfg_.ts;
    prev_err_ = err;
    const double v_r = v_pred_ff - cfg_.k_p * err - cfg_.k_d * rate;
    return std::clamp(v_r, 0.0, cfg_.v_r_max);
  }

  void reset() { has_prev_ = false; }

  const GapControlConfig& config() const { return cfg_; }

 private:
  GapControlConfig cfg_;
  double prev_err_ = 0.0;
  bool has_prev_ = false;
};

}  // namespace platoon
