#include "platoon/safety/failsafe.hpp"

namespace platoon {

bool FailsafeMachine::move_to(SafetyMode to, double now) {
  if (to == mode_ || !transition_legal(mode_, to)) return false;
  mode_ = to;
  entered_at_ = now;
  return true;
}

bool FailsafeMachine::step(const FailsafeInputs& in, double now) {
  // Emergencies trump everything and are reachable from every live mode.
  // Losing the lidar target only counts while actually lidar-following,
  // i.e. degraded because of this truck's own camera.
  const bool emergency =
      in.emergency_rx || in.emergency_own ||
      (mode_ == SafetyMode::Degraded && in.camera_fault_own && in.target_lost);
  if (emergency) return move_to(SafetyMode::EmergencyStop, now);

  if (in.camera_fault_own) {
    // Lose the camera -> follow the truck ahead on lidar alone.
    return move_to(SafetyMode::Degraded, now);
  }

  if (role_ == Role::LV && in.camera_fault_rx) {
    // A follower lost its camera: wind the platoon down. The flag keeps
    // arriving every tick, so this walks Normal -> Degraded -> GracefulStop
    // one legal edge at a time.
    if (mode_ == SafetyMode::Normal) return move_to(SafetyMode::Degraded, now);
    if (mode_ == SafetyMode::Degraded) {
      return move_to(SafetyMode::GracefulStop, now);
    }
  }
  return false;
}

}  // namespace platoon
