#pragma once

#include <cstdint>

namespace platoon {

// Degradation ladder for a truck. Modes only ever move down the ladder
// within a run; there is no recovery path back to Normal.
enum class SafetyMode : std::uint8_t {
  Normal = 0,
  Degraded = 1,      // camera unusable, following the truck ahead via lidar
  GracefulStop = 2,  // controlled ramp-down to standstill
  EmergencyStop = 3  // immediate zero-throttle stop
};

const char* mode_name(SafetyMode m);

// Whether a truck may move from `from` to `to` in one step. Staying put is
// always allowed; every other edge strictly descends the ladder, and
// GracefulStop can only escalate to EmergencyStop.
bool transition_legal(SafetyMode from, SafetyMode to);

}  // namespace platoon
