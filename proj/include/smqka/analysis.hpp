#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smqka/rational.hpp"
#include "smqka/scenario.hpp"

namespace smqka {

enum class ProtocolLabel { smqka, liu_mqka };

std::string_view to_string(ProtocolLabel label);

struct EfficiencyFigure {
  ProtocolLabel label;
  int parties;
  Rational k;
  Rational value;

  friend bool operator==(const EfficiencyFigure&, const EfficiencyFigure&) = default;
};

// SMQKA: 1/((k+1)N). Liu et al.: 1/((k+1)N(N-1)).
EfficiencyFigure qubit_efficiency(ProtocolLabel label, int parties, Rational k);

// Probability that the legitimate check flags one decoy of `decoy_basis`
// after an intercept-resend in `tap_basis`, averaged over the two decoy
// states. Evaluated with 2x2 density matrices, independent of the
// simulator's measurement path.
double detection_probability_oracle(Basis decoy_basis, Basis tap_basis);

BitVector xor_oracle(std::span<const BitVector> subkeys);

struct TrialOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool aborted = false;
  bool correct = false;
  bool attack_success = false;
  std::size_t decoys_checked = 0;
  std::size_t decoy_errors = 0;
  std::map<std::string, bool> attack_flags;
  std::optional<BitVector> desired_key;
  std::optional<std::vector<BitVector>> final_keys;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

struct TrialAggregate {
  std::size_t trials = 0;
  double correctness_rate = 0.0;
  double attack_success_rate = 0.0;
  double abort_rate = 0.0;
  // Total decoy errors over total decoys checked.
  double mean_error_rate = 0.0;
  // 95% half-width of the scenario's headline rate (see headline_rate).
  double confidence_halfwidth = 0.0;

  friend bool operator==(const TrialAggregate&, const TrialAggregate&) = default;
};

// The rate a scenario is judged by: correctness for "none", abort rate for
// the outside eavesdropper, attack success otherwise.
double headline_rate(AttackKind attack, const TrialAggregate& agg);

// 95% half-width for successes/trials: normal approximation from 100
// trials on, Clopper-Pearson below.
double binomial_halfwidth(std::size_t successes, std::size_t trials);

// Scores one run. `correct` means every participant (every honest one in
// the fairness scenarios) ended with the expected key: the XOR oracle, or
// the colluders' target.
TrialOutcome digest(const ScenarioConfig& config, const RunReport& report, std::size_t index,
                    std::uint64_t seed);

TrialAggregate aggregate(AttackKind attack, std::span<const TrialOutcome> outcomes);

struct MonteCarloResult {
  std::vector<TrialOutcome> outcomes;  // ordered by trial index
  TrialAggregate aggregate;
};

// Trial i runs on Rng(Rng::split(master_seed, i)); results do not depend on
// `threads`.
MonteCarloResult monte_carlo(const ScenarioConfig& config, std::size_t trials,
                             std::uint64_t master_seed, unsigned threads = 1);

}  // namespace smqka
