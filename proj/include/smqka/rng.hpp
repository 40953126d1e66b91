#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "smqka/bits.hpp"

namespace smqka {

// Seeded random stream. Every draw is derived from the raw 64-bit output of
// std::mt19937_64, whose sequence is fixed by the standard, so runs replay
// identically across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  Bit bit() { return static_cast<Bit>(engine_() >> 63); }
  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, bound); bound must be nonzero.
  std::size_t below(std::size_t bound);

  BitVector bits(std::size_t count);

  // Seed of the stream for trial `index` under `master`:
  // splitmix64(master ^ splitmix64(index + 1)).
  static std::uint64_t split(std::uint64_t master, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace smqka
