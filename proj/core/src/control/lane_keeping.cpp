#include "platoon/control/lane_keeping.hpp"

#include <algorithm>
#include <stdexcept>

namespace platoon {

void GainSchedule::validate() const {
  if (speeds.size() < 2 || k.size() != speeds.size() ||
      k_l.size() != speeds.size()) {
    throw std::invalid_argument("gain schedule needs >= 2 matching rows");
  }
  for (std::size_t i = 1; i < speeds.size(); ++i) {
    if (!(speeds[i] > speeds[i - 1])) {
      throw std::invalid_argument("schedule speeds must increase strictly");
    }
  }
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (!(k[i] > 0.0) || !(k_l[i] > 0.0)) {
      throw std::invalid_argument("schedule gains must be positive");
    }
  }
}

std::pair<double, double> GainSchedule::gains_at(double v) const {
  if (v <= speeds.front()) return {k.front(), k_l.front()};
  if (v >= speeds.back()) return {k.back(), k_l.back()};
  std::size_t i = 1;
  while (speeds[i] < v) ++i;
  const double f = (v - speeds[i - 1]) / (speeds[i] - speeds[i - 1]);
  return {k[i - 1] + f * (k[i] - k[i - 1]),
          k_l[i - 1] + f * (k_l[i] - k_l[i - 1])};
}

GainSchedule GainSchedule::defaults() {
  GainSchedule s;
  s.speeds = {0.4, 1.4};
  s.k = {0.80, 0.55};
  s.k_l = {0.90, 0.62};
  return s;
}

LaneKeepingController::LaneKeepingController(LaneKeepingConfig cfg)
    : cfg_(std::move(cfg)) {
  cfg_.schedule.validate();
}

double LaneKeepingController::step(const LaneEstimate& est, double v) const {
  const auto [kk, kl] = cfg_.schedule.gains_at(v);
  const double delta = -kk * est.lateral_offset - kl * est.lateral_at_lookahead;
  return std::clamp(delta, -cfg_.steer_limit, cfg_.steer_limit);
}

}  // namespace platoon
