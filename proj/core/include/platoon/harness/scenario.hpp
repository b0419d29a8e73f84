#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "platoon/comms/link.hpp"
#include "platoon/dynamics/motor_model.hpp"
#include "platoon/sensors/camera_model.hpp"
#include "platoon/sensors/encoder.hpp"
#include "platoon/sensors/lidar.hpp"
#include "platoon/world/truck_geometry.hpp"

namespace platoon {

enum class RoiMode : std::uint8_t { Static = 0, Dynamic = 1 };

const char* roi_mode_name(RoiMode m);

// One breakpoint of the operator command profile. Values interpolate
// linearly between breakpoints; repeating a time makes a step.
struct ProfilePoint {
  double t = 0.0;
  double velocity = 0.0;  // m/s
  double gap = 0.0;       // m
};

struct FaultSpec {
  Role truck = Role::FV1;
  std::string kind;  // currently: "camera_freeze"
  double at_time = 0.0;
};

// A complete, self-contained description of one simulated run. Parsed from
// the versioned structured-text format below (see parse()):
//
//   platoon-scenario-v1
//   name = s1
//   duration = 120          # seconds
//   seed = 1
//   ...key = value...
//   [profile]               # t  velocity  gap
//   0    0.6  1.2
//   [faults]                # truck  kind  t
//   FV1  camera_freeze  25
//   [motor]                 # optional: truck  a  b  c  (duty <-> speed fit)
//   LV  -1.1446e-5  0.048278  -47.94
struct ScenarioSpec {
  std::string name = "unnamed";
  double duration = 0.0;       // s
  double ts = 0.02;            // control period, s
  std::uint64_t seed = 1;

  // Proving-ground geometry (stadium: two straights + two half circles).
  double straight_len = 12.0;
  double turn_radius = 2.5;
  double lane_width = 0.45;
  double start_arclength = 9.0;  // lead truck rear axle at t = 0

  TruckGeometry geometry;
  CameraConfig camera;
  LidarConfig lidar;
  EncoderConfig encoder;
  LinkConfig link;  // truck-to-truck radio; the operator console is wired

  std::array<RoiMode, 3> roi = {RoiMode::Dynamic, RoiMode::Dynamic,
                                RoiMode::Dynamic};
  bool mitigation = true;
  double graceful_decel = 0.3;  // m/s^2 ramp in GracefulStop

  std::vector<ProfilePoint> profile;
  std::vector<FaultSpec> faults;
  std::array<MotorParams, 3> motors = {motor_params_for(Role::LV),
                                       motor_params_for(Role::FV1),
                                       motor_params_for(Role::FV2)};

  double camera_period() const { return 1.0 / camera.rate_hz; }

  // Command profile at time t (clamped at the ends; right-continuous at
  // repeated breakpoints, so steps take the later value).
  ProfilePoint command_at(double t) const;

  // Throws std::invalid_argument with a specific message on any violation.
  void validate() const;

  static ScenarioSpec parse(std::istream& in, const std::string& origin = "");
  static ScenarioSpec parse_text(const std::string& text,
                                 const std::string& origin = "");
  static ScenarioSpec load(const std::string& path);
};

}  // namespace platoon
