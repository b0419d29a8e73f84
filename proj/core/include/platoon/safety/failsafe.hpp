#pragma once

#include "platoon/safety/modes.hpp"
#include "platoon/world/truck_geometry.hpp"

namespace platoon {

// Everything the per-truck failsafe machine looks at on one control tick.
struct FailsafeInputs {
  // Own camera watchdog verdict (latched).
  bool camera_fault_own = false;
  // A camera-fault flag arrived over the radio (from a truck behind).
  bool camera_fault_rx = false;
  // An emergency flag arrived over the radio (any direction, or operator).
  bool emergency_rx = false;
  // Local emergency trigger, e.g. collision or actuator fault.
  bool emergency_own = false;
  // While lidar-following, the tracked target ahead has been lost.
  bool target_lost = false;
};

// Per-truck degradation state machine. Each step applies at most one edge of
// the mode ladder, so logged mode sequences stay legal tick by tick:
//   - any emergency input forces EmergencyStop;
//   - a truck whose own camera dies drops to Degraded (lidar-following),
//     and escalates to EmergencyStop if it then loses its lidar target;
//   - the lead truck reacts to a camera-fault flag from behind by stepping
//     Normal -> Degraded -> GracefulStop on consecutive ticks, bringing the
//     whole platoon to a controlled halt.
class FailsafeMachine {
 public:
  explicit FailsafeMachine(Role role) : role_(role) {}

  // Advance one tick. Returns true when the mode changed.
  bool step(const FailsafeInputs& in, double now);

  SafetyMode mode() const { return mode_; }
  double entered_at() const { return entered_at_; }

 private:
  bool move_to(SafetyMode to, double now);

  Role role_;
  SafetyMode mode_ = SafetyMode::Normal;
  double entered_at_ = 0.0;
};

}  // namespace platoon
