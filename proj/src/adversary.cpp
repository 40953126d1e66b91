#include "smqka/adversary.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace smqka {

namespace {

ParticipantId ring(ParticipantId i, int parties) { return ((i % parties) + parties) % parties; }

bool alarm_free(const RunReport& report) {
  if (report.aborted) return false;
  return std::all_of(report.detections.begin(), report.detections.end(),
                     [](const DetectionRecord& d) { return d.errors == 0; });
}

std::vector<Bit> measure_z(SequenceInTransit& seq, Rng& rng) {
  std::vector<Bit> outcomes;
  outcomes.reserve(seq.slots.size());
  for (auto& slot : seq.slots) {
    const auto m = measure(slot.state, Basis::z, rng);
    slot.state = m.collapsed;
    outcomes.push_back(m.index);
  }
  return outcomes;
}

}  // namespace

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::none: return "none";
    case AttackKind::privacy: return "privacy";
    case AttackKind::fairness_all_but_one: return "fairness_all_but_one";
    case AttackKind::fairness_nonadjacent: return "fairness_nonadjacent";
    case AttackKind::outside_intercept_resend: return "outside_intercept_resend";
  }
  return "?";
}

AttackKind attack_from_string(std::string_view name) {
  for (auto kind : {AttackKind::none, AttackKind::privacy, AttackKind::fairness_all_but_one,
                    AttackKind::fairness_nonadjacent, AttackKind::outside_intercept_resend}) {
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("attack", "unknown scenario '" + std::string(name) + "'");
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::pass_through: return "pass_through";
    case ActionKind::encode_masked: return "encode_masked";
    case ActionKind::steal_via_all_zero: return "steal_via_all_zero";
    case ActionKind::measure_and_report: return "measure_and_report";
    case ActionKind::preserve_and_substitute: return "preserve_and_substitute";
  }
  return "?";
}

std::vector<ParticleSlot> privacy_attack_prepare(std::size_t n, ParticipantState* attacker) {
  const PrepRecord zero{Basis::z, 0};
  std::vector<ParticleSlot> slots(n, ParticleSlot{SlotKind::data, prepare(Basis::z, 0), zero});
  if (attacker) attacker->prep_log.assign(n, zero);
  return slots;
}

BitVector privacy_attack_extract(std::span<const Bit> outcomes, std::size_t expected_length) {
  if (outcomes.size() != expected_length) {
    throw ProtocolError("privacy_attack_extract: " + std::to_string(outcomes.size()) +
                        " outcomes for a " + std::to_string(expected_length) + "-bit key");
  }
  return BitVector(outcomes.begin(), outcomes.end());
}

BitVector fairness_mask(const BitVector& stolen, const BitVector& desired) {
  return xor_bits(desired, stolen);
}

std::vector<Bit> intercept_resend(std::span<ParticleSlot> slots, Basis basis, Rng& rng) {
  std::vector<Bit> seen;
  seen.reserve(slots.size());
  for (auto& slot : slots) {
    const auto m = measure(slot.state, basis, rng);
    slot.state = m.collapsed;
    seen.push_back(m.index);
  }
  return seen;
}

// --- plan ---

bool AttackPlan::is_honest(ParticipantId id) const {
  return std::binary_search(honest_set.begin(), honest_set.end(), id);
}

std::size_t AttackPlan::count(ActionKind kind) const {
  std::size_t total = 0;
  for (const auto& [id, list] : actions) {
    total += static_cast<std::size_t>(
        std::count_if(list.begin(), list.end(), [&](const auto& a) { return a.kind == kind; }));
  }
  return total;
}

int max_nonadjacent_honest(int parties) { return parties / 2; }

void validate_honest_set(int parties, std::span<const ParticipantId> honest_set) {
  if (parties < 3) throw ConfigError("N", "at least 3 participants required");
  if (honest_set.empty()) throw ConfigError("honest_set", "at least one honest participant required");
  std::set<ParticipantId> seen;
  for (auto id : honest_set) {
    if (id < 0 || id >= parties) {
      throw ConfigError("honest_set", "id " + std::to_string(id) + " outside [0, " +
                                          std::to_string(parties) + ")");
    }
    if (!seen.insert(id).second) {
      throw ConfigError("honest_set", "id " + std::to_string(id) + " listed twice");
    }
  }
  for (auto id : seen) {
    const auto next = ring(id + 1, parties);
    if (seen.contains(next)) {
      throw ConfigError("honest_set", "participants " + std::to_string(id) + " and " +
                                          std::to_string(next) + " are adjacent");
    }
  }
}

AttackPlan plan_generalized_attack(int parties, std::vector<ParticipantId> honest_set,
                                   BitVector desired) {
  validate_honest_set(parties, honest_set);
  std::sort(honest_set.begin(), honest_set.end());

  AttackPlan plan;
  plan.parties = parties;
  plan.target_key = std::move(desired);
  plan.honest_set = std::move(honest_set);

  for (auto h : plan.honest_set) {
    const auto pred = ring(h - 1, parties);
    const auto succ = ring(h + 1, parties);
    plan.actions[pred].push_back({ActionKind::steal_via_all_zero, h});
    plan.actions[succ].push_back({ActionKind::measure_and_report, h});
    for (int c = 0; c < parties; ++c) {
      if (plan.is_honest(c)) continue;
      if (c == pred) {
        plan.actions[c].push_back({ActionKind::encode_masked, h});
      } else {
        plan.actions[c].push_back({ActionKind::pass_through, h});
      }
    }
    for (auto other : plan.honest_set) {
      if (other == h) continue;
      plan.actions[ring(other - 1, parties)].push_back({ActionKind::preserve_and_substitute, h});
    }
  }
  return plan;
}

// --- blackboard ---

CollusionBlackboard::CollusionBlackboard(std::set<ParticipantId> colluders)
    : colluders_(std::move(colluders)) {}

void CollusionBlackboard::require_colluder(ParticipantId id) const {
  if (!colluders_.contains(id)) {
    throw ProtocolError("blackboard: participant " + std::to_string(id) + " is not a colluder");
  }
}

void CollusionBlackboard::post_stolen(ParticipantId poster, ParticipantId victim, BitVector key,
                                      Stamp when) {
  require_colluder(poster);
  stolen_[victim] = Entry{std::move(key), when};
}

const BitVector& CollusionBlackboard::stolen(ParticipantId reader, ParticipantId victim,
                                             Stamp now) const {
  require_colluder(reader);
  auto it = stolen_.find(victim);
  if (it == stolen_.end() || !(it->second.posted < now)) {
    throw ProtocolError("blackboard: sub-key of " + std::to_string(victim) +
                        " not yet available in round " + std::to_string(now.round));
  }
  return it->second.key;
}

void CollusionBlackboard::set_target(ParticipantId poster, BitVector key) {
  require_colluder(poster);
  target_ = std::move(key);
}

const BitVector& CollusionBlackboard::target(ParticipantId reader) const {
  require_colluder(reader);
  if (!target_) throw ProtocolError("blackboard: no target key posted");
  return *target_;
}

// --- privacy attack ---

PrivacyAttack::PrivacyAttack(int parties, ParticipantId target)
    : parties_(parties),
      target_(target),
      predecessor_(ring(target - 1, parties)),
      successor_(ring(target + 1, parties)) {
  if (parties < 3) throw ConfigError("N", "at least 3 participants required");
  if (target < 0 || target >= parties) {
    throw ConfigError("target", "id " + std::to_string(target) + " outside [0, " +
                                    std::to_string(parties) + ")");
  }
}

Strategy PrivacyAttack::strategy(ParticipantId id) const {
  return id == predecessor_ || id == successor_ ? Strategy::dishonest : Strategy::honest;
}

std::optional<std::vector<ParticleSlot>> PrivacyAttack::prepare_override(ParticipantState& p,
                                                                         std::size_t n) {
  if (p.id != predecessor_) return std::nullopt;
  return privacy_attack_prepare(n, &p);
}

void PrivacyAttack::after_detection(const HopContext& ctx, SequenceInTransit& seq, Rng& rng) {
  // S_pred has passed only through the target when it reaches the successor.
  if (ctx.round != 1 || ctx.owner != predecessor_ || ctx.receiver != successor_) return;
  const auto outcomes = measure_z(seq, rng);
  recovered_ = privacy_attack_extract(outcomes, seq.slots.size());
}

void PrivacyAttack::finish(std::span<const ParticipantState> people, RunReport& report) {
  report.attack_flags["privacy"] =
      recovered_.has_value() && *recovered_ == people[static_cast<std::size_t>(target_)].subkey;
  report.attack_flags["alarm_free"] = alarm_free(report);
}

// --- collusion attack ---

namespace {

std::set<ParticipantId> colluders_of(const AttackPlan& plan) {
  std::set<ParticipantId> out;
  for (int i = 0; i < plan.parties; ++i) {
    if (!plan.is_honest(i)) out.insert(i);
  }
  return out;
}

}  // namespace

CollusionAttack::CollusionAttack(AttackPlan plan)
    : plan_(std::move(plan)), board_(colluders_of(plan_)) {
  board_.set_target(*colluders_of(plan_).begin(), plan_.target_key);
}

ParticipantId CollusionAttack::pred(ParticipantId id) const { return ring(id - 1, plan_.parties); }
ParticipantId CollusionAttack::succ(ParticipantId id) const { return ring(id + 1, plan_.parties); }

bool CollusionAttack::has_action(ParticipantId colluder, ActionKind kind,
                                 ParticipantId subject) const {
  auto it = plan_.actions.find(colluder);
  if (it == plan_.actions.end()) return false;
  return std::find(it->second.begin(), it->second.end(), ColluderAction{kind, subject}) !=
         it->second.end();
}

Strategy CollusionAttack::strategy(ParticipantId id) const {
  return plan_.is_honest(id) ? Strategy::honest : Strategy::dishonest;
}

std::optional<std::vector<ParticleSlot>> CollusionAttack::prepare_override(ParticipantState& p,
                                                                           std::size_t n) {
  if (!has_action(p.id, ActionKind::steal_via_all_zero, succ(p.id))) return std::nullopt;
  return privacy_attack_prepare(n, &p);
}

void CollusionAttack::after_detection(const HopContext& ctx, SequenceInTransit& seq, Rng& rng) {
  if (plan_.is_honest(ctx.receiver)) return;

  if (seq.placeholder) {
    seq.slots = std::move(parked_.at(ctx.owner));
    parked_.erase(ctx.owner);
    seq.placeholder = false;
  }

  const auto victim = succ(ctx.owner);
  if (ctx.round == 1 && plan_.is_honest(victim) && ctx.receiver == succ(victim) &&
      has_action(ctx.receiver, ActionKind::measure_and_report, victim)) {
    const auto outcomes = measure_z(seq, rng);
    board_.post_stolen(ctx.receiver, victim, privacy_attack_extract(outcomes, seq.slots.size()),
                       {ctx.round, Phase::detection});
  }
}

std::optional<BitVector> CollusionAttack::encoding_override(const HopContext& ctx,
                                                            const ParticipantState& encoder) {
  if (plan_.is_honest(encoder.id) || !plan_.is_honest(ctx.owner)) return std::nullopt;
  if (has_action(encoder.id, ActionKind::encode_masked, ctx.owner) &&
      ctx.receiver == pred(ctx.owner)) {
    const Stamp now{ctx.round, Phase::encoding};
    return fairness_mask(board_.stolen(encoder.id, ctx.owner, now), board_.target(encoder.id));
  }
  return BitVector(encoder.subkey.size(), 0);
}

void CollusionAttack::before_send(const HopContext& ctx, SequenceInTransit& seq) {
  if (ctx.receiver == ctx.owner || !plan_.is_honest(ctx.receiver)) return;
  if (!has_action(ctx.sender, ActionKind::preserve_and_substitute, ctx.owner)) return;
  const auto n = seq.slots.size();
  parked_[ctx.owner] = std::move(seq.slots);
  seq.slots = privacy_attack_prepare(n);
  seq.placeholder = true;
}

void CollusionAttack::finish(std::span<const ParticipantState> people, RunReport& report) {
  bool forced = !report.aborted && report.final_keys.has_value();
  bool stolen = true;
  for (auto h : plan_.honest_set) {
    if (forced && (*report.final_keys)[static_cast<std::size_t>(h)] != plan_.target_key) {
      forced = false;
    }
    const auto& actual = people[static_cast<std::size_t>(h)].subkey;
    if (!board_.has_stolen(h) ||
        board_.stolen(succ(h), h, {plan_.parties, Phase::extraction}) != actual) {
      stolen = false;
    }
  }
  report.attack_flags["fairness"] = forced;
  report.attack_flags["subkeys_stolen"] = stolen;
  report.attack_flags["alarm_free"] = alarm_free(report);
}

// --- outside eavesdropper ---

InterceptResendAttack::InterceptResendAttack(Basis basis, int round, ParticipantId owner)
    : basis_(basis), round_(round), owner_(owner) {}

void InterceptResendAttack::on_transit(const HopContext& ctx, std::vector<ParticleSlot>& slots,
                                       Rng& rng) {
  if (ctx.round != round_ || ctx.owner != owner_) return;
  auto seen = intercept_resend(slots, basis_, rng);
  observed_.insert(observed_.end(), seen.begin(), seen.end());
}

void InterceptResendAttack::finish(std::span<const ParticipantState>, RunReport& report) {
  report.attack_flags["eavesdrop_undetected"] = !report.aborted;
}

}  // namespace smqka
