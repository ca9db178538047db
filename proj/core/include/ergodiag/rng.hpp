#pragma once

// Reproducible per-replicate random streams.
//
// A replicate's stream is std::mt19937_64 seeded with
//   stream_seed(base, r) = mix64(base ^ mix64(r + 0x9E3779B97F4A7C15))
// where mix64 is the SplitMix64 finalizer (a bijection on 64-bit words), so
// distinct replicates under one base seed get distinct engine seeds.
// Uniforms take the top 53 bits of an engine word; normals use Box-Muller
// and consume two uniforms per pair of variates.

#include <cstdint>
#include <random>

namespace ergodiag {

struct RngSeed {
  std::uint64_t base_seed = 0;
  std::uint64_t replicate = 0;
};

std::uint64_t mix64(std::uint64_t x);

std::uint64_t stream_seed(RngSeed seed);

/// Sub-seed for a named component (a grid point, a vector coordinate).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t salt);

class Stream {
 public:
  explicit Stream(RngSeed seed) : engine_(stream_seed(seed)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ergodiag
