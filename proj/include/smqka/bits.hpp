#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smqka {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

// Positionwise XOR. Throws std::invalid_argument on length mismatch.
BitVector xor_bits(const BitVector& a, const BitVector& b);

// "0110" <-> {0,1,1,0}. Parsing rejects anything but '0' and '1'.
std::string to_string(const BitVector& bits);
BitVector bits_from_string(std::string_view text);

}  // namespace smqka
