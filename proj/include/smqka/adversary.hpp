#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "smqka/protocol.hpp"

namespace smqka {

enum class AttackKind {
  none,
  privacy,
  fairness_all_but_one,
  fairness_nonadjacent,
  outside_intercept_resend,
};

std::string_view to_string(AttackKind kind);
AttackKind attack_from_string(std::string_view name);

// Attacker-side data preparation: n particles, all |0>. Logs the records in
// `attacker.prep_log` when given.
std::vector<ParticleSlot> privacy_attack_prepare(std::size_t n,
                                                 ParticipantState* attacker = nullptr);

// Z outcomes of a sequence that carries exactly one encoding since an
// all-|0> preparation read back as that encoder's sub-key.
BitVector privacy_attack_extract(std::span<const Bit> outcomes, std::size_t expected_length);

// desired XOR stolen: what a colluder encodes so the owner reads `desired`.
BitVector fairness_mask(const BitVector& stolen, const BitVector& desired);

// Measures every passing particle in `basis`, forwards the collapsed state,
// and returns the outcomes seen.
std::vector<Bit> intercept_resend(std::span<ParticleSlot> slots, Basis basis, Rng& rng);

enum class ActionKind {
  pass_through,             // identity on an honest-owned sequence
  encode_masked,            // desired XOR k_h on S_h, last hop before h
  steal_via_all_zero,       // prepare own sequence all |0> ahead of h
  measure_and_report,       // read k_h off that sequence and post it
  preserve_and_substitute,  // hold S_h back from another honest party
};

std::string_view to_string(ActionKind kind);

struct ColluderAction {
  ActionKind kind;
  ParticipantId subject;  // honest participant the action concerns

  friend bool operator==(const ColluderAction&, const ColluderAction&) = default;
};

struct AttackPlan {
  int parties = 0;
  BitVector target_key;
  std::vector<ParticipantId> honest_set;  // sorted
  std::map<ParticipantId, std::vector<ColluderAction>> actions;

  bool is_honest(ParticipantId id) const;
  std::size_t count(ActionKind kind) const;
};

// Largest honest set the attack admits: a maximum independent set on an
// N-cycle, floor(N/2).
int max_nonadjacent_honest(int parties);

// Throws ConfigError("honest_set", ...) naming the offending pair when two
// honest ids are adjacent modulo N.
void validate_honest_set(int parties, std::span<const ParticipantId> honest_set);

AttackPlan plan_generalized_attack(int parties, std::vector<ParticipantId> honest_set,
                                   BitVector desired);

// Shared state of the colluders. A stolen sub-key is readable only at
// stamps strictly after the measurement that produced it.
class CollusionBlackboard {
 public:
  explicit CollusionBlackboard(std::set<ParticipantId> colluders);

  void post_stolen(ParticipantId poster, ParticipantId victim, BitVector key, Stamp when);
  const BitVector& stolen(ParticipantId reader, ParticipantId victim, Stamp now) const;
  bool has_stolen(ParticipantId victim) const { return stolen_.contains(victim); }

  void set_target(ParticipantId poster, BitVector key);
  const BitVector& target(ParticipantId reader) const;

 private:
  void require_colluder(ParticipantId id) const;

  struct Entry {
    BitVector key;
    Stamp posted;
  };
  std::set<ParticipantId> colluders_;
  std::map<ParticipantId, Entry> stolen_;
  std::optional<BitVector> target_;
};

// Predecessor of `target` prepares all |0>; the successor reads the target's
// sub-key off that sequence one hop later. Sets attack_flags["privacy"].
class PrivacyAttack : public Adversary {
 public:
  PrivacyAttack(int parties, ParticipantId target);

  ParticipantId target() const { return target_; }
  const std::optional<BitVector>& recovered() const { return recovered_; }

  Strategy strategy(ParticipantId id) const override;
  std::optional<std::vector<ParticleSlot>> prepare_override(ParticipantState& p,
                                                            std::size_t n) override;
  void after_detection(const HopContext& ctx, SequenceInTransit& seq, Rng& rng) override;
  void finish(std::span<const ParticipantState> people, RunReport& report) override;

 private:
  int parties_;
  ParticipantId target_;
  ParticipantId predecessor_;
  ParticipantId successor_;
  std::optional<BitVector> recovered_;
};

// Executes an AttackPlan: steals every honest sub-key and forces every
// honest participant's final key to the plan's target. Sets
// attack_flags["fairness"].
class CollusionAttack : public Adversary {
 public:
  explicit CollusionAttack(AttackPlan plan);

  const AttackPlan& plan() const { return plan_; }
  const CollusionBlackboard& blackboard() const { return board_; }

  Strategy strategy(ParticipantId id) const override;
  std::optional<std::vector<ParticleSlot>> prepare_override(ParticipantState& p,
                                                            std::size_t n) override;
  void after_detection(const HopContext& ctx, SequenceInTransit& seq, Rng& rng) override;
  std::optional<BitVector> encoding_override(const HopContext& ctx,
                                             const ParticipantState& encoder) override;
  void before_send(const HopContext& ctx, SequenceInTransit& seq) override;
  void finish(std::span<const ParticipantState> people, RunReport& report) override;

 private:
  ParticipantId pred(ParticipantId id) const;
  ParticipantId succ(ParticipantId id) const;
  bool has_action(ParticipantId colluder, ActionKind kind, ParticipantId subject) const;

  AttackPlan plan_;
  CollusionBlackboard board_;
  std::map<ParticipantId, std::vector<ParticleSlot>> parked_;
};

// Outside eavesdropper tapping the single transmission of S_owner in `round`.
// Sets attack_flags["eavesdrop_undetected"].
class InterceptResendAttack : public Adversary {
 public:
  InterceptResendAttack(Basis basis, int round = 0, ParticipantId owner = 0);

  const std::vector<Bit>& observed() const { return observed_; }

  void on_transit(const HopContext& ctx, std::vector<ParticleSlot>& slots, Rng& rng) override;
  void finish(std::span<const ParticipantState> people, RunReport& report) override;

 private:
  Basis basis_;
  int round_;
  ParticipantId owner_;
  std::vector<Bit> observed_;
};

}  // namespace smqka
