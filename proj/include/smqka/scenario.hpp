#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smqka/adversary.hpp"
#include "smqka/protocol.hpp"

namespace smqka {

// desired_key = random: drawn per trial from the trial's stream.
struct RandomKey {
  friend bool operator==(const RandomKey&, const RandomKey&) = default;
};

using DesiredKey = std::variant<BitVector, RandomKey>;

struct ScenarioConfig {
  int parties = 3;  // "N"
  std::size_t n = 1;
  double k = 0.0;
  double threshold = 0.0;
  AttackKind attack = AttackKind::none;
  std::optional<std::vector<ParticipantId>> honest_set;
  std::optional<DesiredKey> desired_key;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  // Privacy attack victim; defaults to N-1.
  std::optional<ParticipantId> target;
  // Measurement basis of the outside eavesdropper.
  Basis tap_basis = Basis::z;

  ProtocolParams protocol_params() const;
  ParticipantId privacy_target() const { return target.value_or(parties - 1); }
  // Honest participants the fairness scenarios attack.
  std::vector<ParticipantId> attacked_honest_set() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Throws ConfigError naming the first violated field.
void validate(const ScenarioConfig& config);

// Plain-text key-value format, one `key = value` per line, '#' comments.
// Keys: N, n, k, threshold, attack, honest_set (comma list), desired_key
// (bit string or "random"), seed, trials, target, tap_basis.
ScenarioConfig parse_config(std::string_view text);
std::string serialize_config(const ScenarioConfig& config);

// One full protocol run: draws sub-keys (and a random desired key) from
// `rng`, wires the configured adversary and executes the protocol.
RunReport run_protocol(const ScenarioConfig& config, Rng& rng);

}  // namespace smqka
