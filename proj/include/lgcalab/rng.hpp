// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace lgcalab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3", SC'11).
PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

/// Independent sub-streams of a seeded counter-based generator.
enum class Stream : std::uint32_t {
  CollisionChirality = 1,
  InitialOccupation = 2,
  InitialShuffle = 3,
  ChainTrajectory = 4,
  EcaInitial = 5,
  TestData = 6,
};

/// Stateless generator: every draw is a pure function of the seed and a
/// caller-supplied coordinate tuple, so results never depend on evaluation
/// order or thread count.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  PhiloxCounter block(Stream stream, std::uint32_t a, std::uint32_t b,
                      std::uint32_t c) const {
    return philox4x32({static_cast<std::uint32_t>(stream), a, b, c},
                      {static_cast<std::uint32_t>(seed_),
                       static_cast<std::uint32_t>(seed_ >> 32)});
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(Stream stream, std::uint32_t a, std::uint32_t b,
                 std::uint32_t c) const;

 private:
  std::uint64_t seed_;
};

inline double to_unit_double(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(hi) << 21) ^ (static_cast<std::uint64_t>(lo) >> 11);
  return static_cast<double>(bits & ((1ull << 53) - 1)) * 0x1.0p-53;
}

}  // namespace lgcalab
