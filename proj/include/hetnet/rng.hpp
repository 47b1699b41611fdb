#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hetnet {

// SplitMix64 finalizer, used only to expand (seed, drop, purpose) triples
// into decorrelated engine seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random stream, one per (seed, drop, purpose).
//
// Engine: std::mt19937_64, fully specified by the standard and therefore
// bit-stable across platforms. Variates are derived from raw 64-bit draws
// instead of <random> distributions, whose output is implementation
// defined. The draw order of every consumer is part of its reproducibility
// contract.
class StreamRng {
 public:
  enum Purpose : std::uint64_t { kTopology = 1, kGains = 2 };

  StreamRng(std::uint64_t seed, std::uint64_t drop, std::uint64_t purpose)
      : engine_(mix64(mix64(seed + 0x9E3779B97F4A7C15ULL * (drop + 1)) ^
                      (0xC2B2AE3D27D4EB4FULL * (purpose + 1)))) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Unit-mean exponential via inverse CDF; uniform() < 1 keeps it finite.
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hetnet
