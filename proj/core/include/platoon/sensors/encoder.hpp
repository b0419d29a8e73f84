#pragma once

#include <cmath>

#include "platoon/sensors/rng.hpp"

namespace platoon {

struct EncoderConfig {
  double quantum{0.005};  // m/s per count at the control period
  double sigma_v{0.01};
};

// Wheel-encoder speed estimate: count noise then quantization. A stopped
// wheel produces no counts, so exactly zero.
inline double encoder_read(double v_true, const EncoderConfig& cfg,
                           NormalStream& noise) {
  if (v_true == 0.0) return 0.0;
  const double noisy = v_true + noise.gauss(cfg.sigma_v);
  const double q = cfg.quantum;
  double v = q * std::round(noisy / q);
  return v < 0.0 ? 0.0 : v;
}

}  // namespace platoon
