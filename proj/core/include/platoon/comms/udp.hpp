#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace platoon {

// Thin non-blocking UDP loopback socket for shipping encoded datagrams
// between processes. open_loopback() may fail in restricted environments;
// callers should treat that as "transport unavailable", not an error.
class UdpSocket {
 public:
  UdpSocket() = default;
  ~UdpSocket();
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  UdpSocket(UdpSocket&& other) noexcept;
  UdpSocket& operator=(UdpSocket&& other) noexcept;

  bool open_loopback();  // bind 127.0.0.1, ephemeral port
  bool is_open() const { return fd_ >= 0; }
  std::uint16_t port() const { return port_; }

  bool send_to(std::uint16_t port, const std::vector<std::uint8_t>& datagram);
  std::optional<std::vector<std::uint8_t>> receive();  // non-blocking

 private:
  void close_fd();
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace platoon
