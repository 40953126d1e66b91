#include "smqka/rng.hpp"

#include <limits>
#include <stdexcept>

namespace smqka {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::split(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

std::size_t Rng::below(std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t b = bound;
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

BitVector Rng::bits(std::size_t count) {
  BitVector out(count);
  for (auto& b : out) b = bit();
  return out;
}

}  // namespace smqka
