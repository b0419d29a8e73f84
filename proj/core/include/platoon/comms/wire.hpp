#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "platoon/comms/messages.hpp"

namespace platoon {

// Datagram layout, little-endian throughout:
//   u16 magic (0x5043), u8 version (1), u8 msg_type, u8 sender, u32 seq,
//   f64 sent_at, payload (type-specific f32 fields), u8 flags, u32 crc32.
// The CRC (IEEE reflected polynomial) covers every byte before it.
inline constexpr std::uint16_t kWireMagic = 0x5043;
inline constexpr std::uint8_t kWireVersion = 1;

std::vector<std::uint8_t> encode_message(const Message& msg);

// nullopt on truncation, bad magic/version/type, size mismatch, or CRC.
std::optional<Message> decode_message(const std::uint8_t* data,
                                      std::size_t len);

std::uint32_t crc32_ieee(const std::uint8_t* data, std::size_t len);

}  // namespace platoon
