#pragma once

#include <complex>
#include <string_view>

#include "smqka/bits.hpp"
#include "smqka/rng.hpp"

namespace smqka {

using Amplitude = std::complex<double>;

inline constexpr double kStateTolerance = 1e-9;

// Z = {|0>, |1>}, X = {|+>, |->}, Y = {|+y>, |-y>}.
enum class Basis { z, x, y };

std::string_view to_string(Basis basis);
// Accepts "Z"/"X"/"Y" in either case; throws std::invalid_argument otherwise.
Basis basis_from_string(std::string_view text);

// Single-qubit pure state amp0|0> + amp1|1>. Global phase is not
// observable; compare states with equal_up_to_phase.
struct PureState {
  Amplitude amp0;
  Amplitude amp1;

  friend bool operator==(const PureState&, const PureState&) = default;
};

struct MeasurementOutcome {
  Bit index;
  PureState collapsed;
};

// Eigenstate `index` of `basis`; index 0 is |0>, |+> or |+y>.
PureState prepare(Basis basis, Bit index);

// bit 0 applies I, bit 1 applies U = |0><1| - |1><0|, i.e.
// (amp0, amp1) -> (amp1, -amp0).
PureState apply_encoding(const PureState& state, Bit bit);

// Born-rule measurement with collapse onto the selected eigenstate.
MeasurementOutcome measure(const PureState& state, Basis basis, Rng& rng);

// |<eigenstate_index|state>|^2
double outcome_probability(const PureState& state, Basis basis, Bit index);

// <a|b>
Amplitude inner_product(const PureState& a, const PureState& b);
double norm_squared(const PureState& state);

bool equal_up_to_phase(const PureState& a, const PureState& b,
                       double tol = kStateTolerance);

}  // namespace smqka
