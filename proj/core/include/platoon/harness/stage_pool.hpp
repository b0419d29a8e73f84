#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace platoon {

// Persistent workers that run f(0..n-1), one index each, and block the
// caller until all are done. Cheap enough to dispatch every tick.
class StagePool {
 public:
  explicit StagePool(int n) : states_(n) {
    for (int i = 0; i < n; ++i) {
      workers_.emplace_back([this, i] { worker(i); });
    }
  }

  ~StagePool() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
  }

  StagePool(const StagePool&) = delete;
  StagePool& operator=(const StagePool&) = delete;

  void run(const std::function<void(int)>& f) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      task_ = &f;
      ++generation_;
      pending_ = static_cast<int>(states_.size());
    }
    cv_.notify_all();
    std::unique_lock<std::mutex> lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    task_ = nullptr;
  }

 private:
  void worker(int index) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(int)>* task = nullptr;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        task = task_;
      }
      (*task)(index);
      {
        std::lock_guard<std::mutex> lock(mu_);
        if (--pending_ == 0) done_cv_.notify_all();
      }
    }
  }

  std::vector<int> states_;
  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  const std::function<void(int)>* task_ = nullptr;
  std::uint64_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
};

}  // namespace platoon
