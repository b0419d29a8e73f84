#pragma once

#include "platoon/comms/messages.hpp"

namespace platoon {

// Sticky alert flags carried on every radio message a truck sends. Once a
// truck has raised or heard an alert it keeps repeating it both ways, so
// alerts survive dropped packets and spread through the chain.
struct RelayFlags {
  bool emergency = false;
  bool camera_fail = false;

  void absorb(std::uint8_t bits) {
    emergency = emergency || (bits & kFlagEmergency);
    camera_fail = camera_fail || (bits & kFlagCameraFail);
  }

  std::uint8_t bits() const {
    return static_cast<std::uint8_t>((emergency ? kFlagEmergency : 0) |
                                     (camera_fail ? kFlagCameraFail : 0));
  }
};

}  // namespace platoon
