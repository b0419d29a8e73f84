#include "platoon/comms/link.hpp"

#include <algorithm>

namespace platoon {

bool LinkModel::send(const Message& msg, double now) {
  // Draw both variates every time so the stream does not depend on the
  // drop outcome; equal seeds then give identical delivery schedules.
  const double u_drop =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  const double u_jit =
      std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  if (u_drop < cfg_.drop_prob) return false;
  queue_.push_back({now + cfg_.latency + u_jit * cfg_.jitter, msg});
  return true;
}

std::vector<Message> LinkModel::poll(double now) {
  std::vector<InFlight> due;
  for (auto& f : queue_) {
    if (f.deliver_at <= now) due.push_back(f);
  }
  std::erase_if(queue_,
                [&](const InFlight& f) { return f.deliver_at <= now; });
  std::sort(due.begin(), due.end(), [](const InFlight& a, const InFlight& b) {
    if (a.deliver_at != b.deliver_at) return a.deliver_at < b.deliver_at;
    return a.msg.header.seq < b.msg.header.seq;
  });
  std::vector<Message> out;
  out.reserve(due.size());
  for (auto& f : due) out.push_back(std::move(f.msg));
  return out;
}

}  // namespace platoon
