#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "platoon/world/truck_geometry.hpp"

namespace platoon {

// SplitMix64 step; also usable as a counter-based generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// Independent per-truck, per-sensor streams derived from one master seed, so
// per-truck stages can run in any order (or in parallel) without changing
// any drawn value.
enum class NoisePurpose : std::uint8_t {
  CameraPixels = 1,
  Lidar = 2,
  Encoder = 3,
  Link = 4,
  Misc = 5,
};

inline std::uint64_t derive_seed(std::uint64_t master, Role truck,
                                 NoisePurpose purpose, std::uint32_t extra = 0) {
  const std::uint64_t tag = (static_cast<std::uint64_t>(truck) << 40) |
                            (static_cast<std::uint64_t>(purpose) << 32) | extra;
  return mix64(master, tag);
}

// Acklam's rational approximation of the standard normal quantile,
// |error| < 1.2e-9. Used to build deterministic noise tables.
double inverse_normal_cdf(double p);

// Gaussian pixel noise quantized to signed bytes: index with 16 uniform bits.
class GaussianByteTable {
 public:
  explicit GaussianByteTable(double sigma);
  std::int8_t at(std::uint16_t u) const { return table_[u]; }

 private:
  std::array<std::int8_t, 65536> table_{};
};

// Convenience wrapper for the low-volume sensor streams.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : eng_(seed) {}
  double gauss(double sigma) {
    return sigma == 0.0 ? 0.0 : sigma * norm_(eng_);
  }
  double uniform01() { return uni_(eng_); }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> norm_{0.0, 1.0};
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

}  // namespace platoon
