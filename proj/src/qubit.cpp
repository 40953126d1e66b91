#include "smqka/qubit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smqka {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Amplitude kI{0.0, 1.0};

// Probabilities this close to 0 or 1 come from eigenstates carrying
// rounding error; snapping them keeps eigenstate measurement exact.
constexpr double kSnap = 1e-12;

}  // namespace

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::z: return "Z";
    case Basis::x: return "X";
    case Basis::y: return "Y";
  }
  return "?";
}

Basis basis_from_string(std::string_view text) {
  if (text == "Z" || text == "z") return Basis::z;
  if (text == "X" || text == "x") return Basis::x;
  if (text == "Y" || text == "y") return Basis::y;
  throw std::invalid_argument("unknown basis '" + std::string(text) + "'");
}

PureState prepare(Basis basis, Bit index) {
  const double sign = index ? -1.0 : 1.0;
  switch (basis) {
    case Basis::z:
      return index ? PureState{0.0, 1.0} : PureState{1.0, 0.0};
    case Basis::x:
      return {kInvSqrt2, sign * kInvSqrt2};
    case Basis::y:
      return {kInvSqrt2, sign * kInvSqrt2 * kI};
  }
  throw std::invalid_argument("prepare: bad basis");
}

PureState apply_encoding(const PureState& state, Bit bit) {
  if (!bit) return state;
  return {state.amp1, -state.amp0};
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  return std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
}

double norm_squared(const PureState& state) {
  return std::norm(state.amp0) + std::norm(state.amp1);
}

double outcome_probability(const PureState& state, Basis basis, Bit index) {
  double p = std::norm(inner_product(prepare(basis, index), state));
  if (p < kSnap) return 0.0;
  if (p > 1.0 - kSnap) return 1.0;
  return p;
}

MeasurementOutcome measure(const PureState& state, Basis basis, Rng& rng) {
  const double p0 = outcome_probability(state, basis, 0);
  const Bit index = rng.uniform() < p0 ? 0 : 1;
  return {index, prepare(basis, index)};
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

}  // namespace smqka
