#include "platoon/comms/wire.hpp"

#include <array>
#include <cstring>

namespace platoon {

namespace {

constexpr std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) {
      c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : (c >> 1);
    }
    table[i] = c;
  }
  return table;
}

constexpr auto kCrcTable = make_crc_table();

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& b, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(b, bits);
}

void put_f64(std::vector<std::uint8_t>& b, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

struct Reader {
  const std::uint8_t* p;
  std::size_t left;

  bool u8(std::uint8_t& v) {
    if (left < 1) return false;
    v = *p++;
    --left;
    return true;
  }
  bool u16(std::uint16_t& v) {
    if (left < 2) return false;
    v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    p += 2;
    left -= 2;
    return true;
  }
  bool u32(std::uint32_t& v) {
    if (left < 4) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return true;
  }
  bool f32(float& v) {
    std::uint32_t bits;
    if (!u32(bits)) return false;
    std::memcpy(&v, &bits, 4);
    return true;
  }
  bool f64(double& v) {
    if (left < 8) return false;
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    std::memcpy(&v, &bits, 8);
    return true;
  }
};

}  // namespace

std::uint32_t crc32_ieee(const std::uint8_t* data, std::size_t len) {
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i) {
    c = kCrcTable[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

std::vector<std::uint8_t> encode_message(const Message& msg) {
  std::vector<std::uint8_t> b;
  b.reserve(32);
  put_u16(b, kWireMagic);
  b.push_back(kWireVersion);
  b.push_back(static_cast<std::uint8_t>(msg.type()));
  b.push_back(msg.header.sender);
  put_u32(b, msg.header.seq);
  put_f64(b, msg.header.sent_at);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CommandMsg>) {
          put_f32(b, static_cast<float>(p.target_velocity));
          put_f32(b, static_cast<float>(p.target_gap));
        } else {
          put_f32(b, static_cast<float>(p.v_bar_r));
          put_f32(b, static_cast<float>(p.target_gap_relay));
        }
      },
      msg.payload);
  b.push_back(msg.header.flags);
  put_u32(b, crc32_ieee(b.data(), b.size()));
  return b;
}

std::optional<Message> decode_message(const std::uint8_t* data,
                                      std::size_t len) {
  if (len < 4 + 4) return std::nullopt;
  const std::uint32_t want = crc32_ieee(data, len - 4);
  Reader tail{data + len - 4, 4};
  std::uint32_t got = 0;
  tail.u32(got);
  if (want != got) return std::nullopt;

  Reader r{data, len - 4};
  std::uint16_t magic;
  std::uint8_t version, type_raw, sender, flags;
  std::uint32_t seq;
  double sent_at;
  if (!r.u16(magic) || magic != kWireMagic) return std::nullopt;
  if (!r.u8(version) || version != kWireVersion) return std::nullopt;
  if (!r.u8(type_raw)) return std::nullopt;
  if (!r.u8(sender) || !r.u32(seq) || !r.f64(sent_at)) return std::nullopt;

  Message msg;
  msg.header.sender = sender;
  msg.header.seq = seq;
  msg.header.sent_at = sent_at;
  float a = 0, b = 0;
  switch (static_cast<MsgType>(type_raw)) {
    case MsgType::Command:
      if (!r.f32(a) || !r.f32(b)) return std::nullopt;
      msg.payload = CommandMsg{a, b};
      break;
    case MsgType::V2V:
      if (!r.f32(a) || !r.f32(b)) return std::nullopt;
      msg.payload = V2VMsg{a, b};
      break;
    default:
      return std::nullopt;
  }
  if (!r.u8(flags)) return std::nullopt;
  if (r.left != 0) return std::nullopt;  // trailing bytes: size mismatch
  msg.header.flags = flags;
  return msg;
}

}  // namespace platoon
