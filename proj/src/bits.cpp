#include "smqka/bits.hpp"

#include <stdexcept>

namespace smqka {

BitVector xor_bits(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("xor of bit strings with lengths " +
                                std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
  }
  BitVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] ^ b[j];
  return out;
}

std::string to_string(const BitVector& bits) {
  std::string out;
  out.reserve(bits.size());
  for (Bit b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BitVector bits_from_string(std::string_view text) {
  BitVector out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

}  // namespace smqka
