#pragma once

#include <cstdint>
#include <variant>

namespace platoon {

// Header flag bits, shared by both message kinds.
inline constexpr std::uint8_t kFlagEmergency = 0x01;
inline constexpr std::uint8_t kFlagCameraFail = 0x02;

enum class MsgType : std::uint8_t {
  Command = 1,  // operator station -> lead truck
  V2V = 2,      // truck -> neighbouring truck, both directions
};

struct CommandMsg {
  double target_velocity = 0.0;  // m/s
  double target_gap = 0.0;       // m, bumper to body
};

struct V2VMsg {
  double v_bar_r = 0.0;          // sender's saturated velocity reference
  double target_gap_relay = 0.0;  // gap setpoint passed down the chain
};

struct MsgHeader {
  std::uint8_t sender = 0;  // Role value; 255 = operator station
  std::uint32_t seq = 0;    // strictly increasing per sender
  double sent_at = 0.0;     // sender clock, s
  std::uint8_t flags = 0;   // kFlag* bits
};

inline constexpr std::uint8_t kCenterSender = 255;

struct Message {
  MsgHeader header;
  std::variant<CommandMsg, V2VMsg> payload;

  MsgType type() const { return static_cast<MsgType>(payload.index() + 1); }
  bool emergency() const { return header.flags & kFlagEmergency; }
  bool camera_fail() const { return header.flags & kFlagCameraFail; }
};

inline Message make_command(std::uint32_t seq, double t, double v, double gap,
                            std::uint8_t flags = 0) {
  Message m;
  m.header = {kCenterSender, seq, t, flags};
  m.payload = CommandMsg{v, gap};
  return m;
}

inline Message make_v2v(std::uint8_t sender, std::uint32_t seq, double t,
                        double v_bar_r, double gap, std::uint8_t flags = 0) {
  Message m;
  m.header = {sender, seq, t, flags};
  m.payload = V2VMsg{v_bar_r, gap};
  return m;
}

}  // namespace platoon
