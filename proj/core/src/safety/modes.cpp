#include "platoon/safety/modes.hpp"

namespace platoon {

const char* mode_name(SafetyMode m) {
  switch (m) {
    case SafetyMode::Normal:
      return "normal";
    case SafetyMode::Degraded:
      return "degraded";
    case SafetyMode::GracefulStop:
      return "graceful_stop";
    case SafetyMode::EmergencyStop:
      return "emergency_stop";
  }
  return "?";
}

bool transition_legal(SafetyMode from, SafetyMode to) {
  if (from == to) return true;
  switch (from) {
    case SafetyMode::Normal:
      return to == SafetyMode::Degraded || to == SafetyMode::EmergencyStop;
    case SafetyMode::Degraded:
      return to == SafetyMode::GracefulStop || to == SafetyMode::EmergencyStop;
    case SafetyMode::GracefulStop:
      return to == SafetyMode::EmergencyStop;
    case SafetyMode::EmergencyStop:
      return false;
  }
  return false;
}

}  // namespace platoon
