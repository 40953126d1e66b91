#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "smqka/bits.hpp"
#include "smqka/qubit.hpp"
#include "smqka/rng.hpp"

namespace smqka::test {

// Haar-ish random normalized state from independent Gaussian amplitudes.
inline PureState random_state(std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  PureState s{{g(gen), g(gen)}, {g(gen), g(gen)}};
  const double norm = std::sqrt(std::norm(s.amp0) + std::norm(s.amp1));
  s.amp0 /= norm;
  s.amp1 /= norm;
  return s;
}

// Plain 2x2 matrix-vector product, kept apart from the library's encoding.
using Matrix2 = std::array<std::array<std::complex<double>, 2>, 2>;

inline PureState apply(const Matrix2& m, const PureState& s) {
  return {m[0][0] * s.amp0 + m[0][1] * s.amp1, m[1][0] * s.amp0 + m[1][1] * s.amp1};
}

// U = |0><1| - |1><0|
inline const Matrix2 kU{{{0.0, 1.0}, {-1.0, 0.0}}};

inline BitVector xor_all(const std::vector<BitVector>& keys) {
  BitVector out(keys.at(0).size(), 0);
  for (const auto& k : keys) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = out[j] != k.at(j) ? 1 : 0;
  }
  return out;
}

}  // namespace smqka::test
