#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "platoon/comms/messages.hpp"

namespace platoon {

struct LinkConfig {
  double latency = 0.02;   // s, fixed part
  double jitter = 0.0;     // s, uniform [0, jitter) added per message
  double drop_prob = 0.0;  // independent per message
};

// One-directional lossy channel. Deliveries come back time-ordered
// (ties broken by sequence number) and the randomness is fully seeded.
class LinkModel {
 public:
  LinkModel(const LinkConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), rng_(seed) {}

  // Returns false if the message was dropped.
  bool send(const Message& msg, double now);

  // All messages whose delivery time has arrived, in (time, seq) order.
  std::vector<Message> poll(double now);

  const LinkConfig& config() const { return cfg_; }

 private:
  struct InFlight {
    double deliver_at;
    Message msg;
  };

  LinkConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<InFlight> queue_;
};

// Receiver-side freshness bookkeeping: keeps the highest-sequence value
// seen and reports it stale once it ages past the timeout.
template <typename T>
class LatestValue {
 public:
  void offer(const MsgHeader& h, const T& value, double received_at) {
    if (has_ && h.seq <= seq_) return;
    has_ = true;
    seq_ = h.seq;
    value_ = value;
    received_at_ = received_at;
  }

  bool has() const { return has_; }
  bool fresh(double now, double timeout = 0.5) const {
    return has_ && (now - received_at_) <= timeout;
  }
  const T& value() const { return value_; }
  std::uint32_t seq() const { return seq_; }
  double received_at() const { return received_at_; }

 private:
  bool has_ = false;
  std::uint32_t seq_ = 0;
  T value_{};
  double received_at_ = 0.0;
};

}  // namespace platoon
