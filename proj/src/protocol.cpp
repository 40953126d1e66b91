#include "smqka/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace smqka {

namespace {

ParticipantId ring(ParticipantId i, int parties) { return ((i % parties) + parties) % parties; }

PrepRecord draw_decoy(DecoyBases bases, Rng& rng) {
  Basis basis = Basis::x;
  switch (bases) {
    case DecoyBases::x_and_y: basis = rng.bit() ? Basis::y : Basis::x; break;
    case DecoyBases::x_only: basis = Basis::x; break;
    case DecoyBases::y_only: basis = Basis::y; break;
  }
  return {basis, rng.bit()};
}

}  // namespace

std::size_t decoy_count(std::size_t n, double k) {
  if (!std::isfinite(k) || k < 0.0) throw ConfigError("k", "detection rate must be >= 0");
  const double kn = k * static_cast<double>(n);
  const double rounded = std::round(kn);
  if (std::abs(kn - rounded) > 1e-9) {
    throw ConfigError("k", "k*n not an integer (k=" + std::to_string(k) +
                               ", n=" + std::to_string(n) + ")");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<ParticleSlot> init_sequence(ParticipantState& p, std::size_t n, Rng& rng) {
  if (n == 0) throw ConfigError("n", "sequence length must be >= 1");
  std::vector<ParticleSlot> slots;
  slots.reserve(n);
  p.prep_log.clear();
  for (std::size_t j = 0; j < n; ++j) {
    const PrepRecord rec{Basis::z, rng.bit()};
    slots.push_back({SlotKind::data, prepare(rec.basis, rec.index), rec});
    p.prep_log.push_back(rec);
  }
  return slots;
}

SequenceInTransit insert_decoys(std::vector<ParticleSlot> data, ParticipantId owner,
                                ParticipantId sender, double k, Rng& rng, DecoyBases bases) {
  const std::size_t n = data.size();
  const std::size_t kn = decoy_count(n, k);
  const std::size_t total = n + kn;

  // Partial Fisher-Yates: the first kn entries become the decoy positions.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < kn; ++i) {
    std::swap(order[i], order[i + rng.below(total - i)]);
  }
  std::vector<std::size_t> positions(order.begin(), order.begin() + static_cast<long>(kn));
  std::sort(positions.begin(), positions.end());

  SequenceInTransit seq;
  seq.owner = owner;
  seq.hop_sender = sender;
  seq.slots.reserve(total);
  auto next_decoy = positions.begin();
  auto next_data = data.begin();
  for (std::size_t pos = 0; pos < total; ++pos) {
    if (next_decoy != positions.end() && *next_decoy == pos) {
      const PrepRecord rec = draw_decoy(bases, rng);
      seq.slots.push_back({SlotKind::decoy, prepare(rec.basis, rec.index), rec});
      ++next_decoy;
    } else {
      seq.slots.push_back(std::move(*next_data++));
    }
  }
  seq.decoy_positions = std::move(positions);
  return seq;
}

DetectionRecord run_detection(SequenceInTransit& seq, ParticipantId receiver, double threshold,
                              Rng& rng) {
  DetectionRecord rec;
  rec.hop = {seq.hop_sender, receiver};
  rec.owner = seq.owner;

  // Sender's announcement: positions and bases.
  struct Announcement {
    std::size_t position;
    Basis basis;
  };
  std::vector<Announcement> announced;
  announced.reserve(seq.decoy_positions.size());
  for (std::size_t pos : seq.decoy_positions) {
    if (pos >= seq.slots.size()) throw ProtocolError("decoy position out of range");
    announced.push_back({pos, seq.slots[pos].prep.basis});
  }

  // Receiver measures and reports outcomes.
  std::vector<Bit> reported;
  reported.reserve(announced.size());
  for (const auto& a : announced) {
    reported.push_back(measure(seq.slots[a.position].state, a.basis, rng).index);
  }

  // Sender compares against its preparation records.
  for (std::size_t i = 0; i < announced.size(); ++i) {
    if (reported[i] != seq.slots[announced[i].position].prep.index) ++rec.errors;
  }
  rec.decoys_checked = announced.size();
  rec.error_rate = rec.decoys_checked == 0
                       ? 0.0
                       : static_cast<double>(rec.errors) / static_cast<double>(rec.decoys_checked);
  rec.passed = rec.error_rate <= threshold;

  std::vector<ParticleSlot> remaining;
  remaining.reserve(seq.slots.size() - announced.size());
  auto next_decoy = seq.decoy_positions.begin();
  for (std::size_t pos = 0; pos < seq.slots.size(); ++pos) {
    if (next_decoy != seq.decoy_positions.end() && *next_decoy == pos) {
      ++next_decoy;
      continue;
    }
    remaining.push_back(std::move(seq.slots[pos]));
  }
  seq.slots = std::move(remaining);
  seq.decoy_positions.clear();
  return rec;
}

SequenceInTransit encode_sequence(SequenceInTransit seq, const BitVector& bits) {
  if (!seq.decoy_positions.empty()) {
    throw ProtocolError("encode_sequence: decoys must be removed before encoding");
  }
  if (seq.slots.size() != bits.size()) {
    throw ProtocolError("encode_sequence: sequence has " + std::to_string(seq.slots.size()) +
                        " particles but key has " + std::to_string(bits.size()) + " bits");
  }
  for (std::size_t j = 0; j < bits.size(); ++j) {
    seq.slots[j].state = apply_encoding(seq.slots[j].state, bits[j]);
  }
  return seq;
}

KeyExtraction extract_key(const ParticipantState& owner, const SequenceInTransit& seq, Rng& rng) {
  if (seq.owner != owner.id) {
    throw ProtocolError("extract_key: participant " + std::to_string(owner.id) +
                        " does not own sequence of " + std::to_string(seq.owner));
  }
  if (!seq.decoy_positions.empty()) throw ProtocolError("extract_key: decoys still present");
  if (owner.prep_log.size() != seq.slots.size()) {
    throw ProtocolError("extract_key: no preparation record for participant " +
                        std::to_string(owner.id));
  }
  if (owner.subkey.size() != seq.slots.size()) {
    throw ProtocolError("extract_key: sub-key length mismatch");
  }
  KeyExtraction out;
  out.encoded.reserve(seq.slots.size());
  for (std::size_t j = 0; j < seq.slots.size(); ++j) {
    const Bit outcome = measure(seq.slots[j].state, Basis::z, rng).index;
    out.encoded.push_back(outcome == owner.prep_log[j].index ? 0 : 1);
  }
  out.final_key = xor_bits(owner.subkey, out.encoded);
  return out;
}

RunReport execute_protocol(const ProtocolParams& params, std::vector<BitVector> subkeys,
                           Adversary* adversary, Rng& rng) {
  const int parties = params.parties;
  if (parties < 3) throw ConfigError("N", "at least 3 participants required");
  if (params.n == 0) throw ConfigError("n", "sequence length must be >= 1");
  decoy_count(params.n, params.k);
  if (!(params.threshold >= 0.0 && params.threshold <= 1.0)) {
    throw ConfigError("threshold", "must lie in [0, 1]");
  }
  if (subkeys.size() != static_cast<std::size_t>(parties)) {
    throw ConfigError("subkeys", "one sub-key per participant required");
  }
  for (const auto& key : subkeys) {
    if (key.size() != params.n) throw ConfigError("subkeys", "sub-key length must equal n");
  }

  Adversary honest;
  Adversary& adv = adversary ? *adversary : honest;

  RunReport report;
  report.params = params;
  report.subkeys = subkeys;

  std::vector<ParticipantState> people(static_cast<std::size_t>(parties));
  for (int i = 0; i < parties; ++i) {
    auto& p = people[static_cast<std::size_t>(i)];
    p.id = i;
    p.subkey = std::move(subkeys[static_cast<std::size_t>(i)]);
    p.strategy = adv.strategy(i);
  }

  auto send = [&](SequenceInTransit data_only, const HopContext& ctx) {
    adv.before_send(ctx, data_only);
    const bool placeholder = data_only.placeholder;
    auto seq = insert_decoys(std::move(data_only.slots), ctx.owner, ctx.sender, params.k, rng,
                             params.decoy_bases);
    seq.placeholder = placeholder;
    return seq;
  };

  // Step 1: every participant prepares and sends its own sequence.
  std::vector<SequenceInTransit> held(static_cast<std::size_t>(parties));
  for (int o = 0; o < parties; ++o) {
    auto& p = people[static_cast<std::size_t>(o)];
    auto data = adv.prepare_override(p, params.n);
    if (!data) data = init_sequence(p, params.n, rng);
    SequenceInTransit seq;
    seq.slots = std::move(*data);
    seq.owner = o;
    seq.hop_sender = o;
    held[static_cast<std::size_t>(o)] = send(std::move(seq), {0, o, ring(o + 1, parties), o});
  }

  for (int round = 0; round < parties; ++round) {
    auto context = [&](int owner) {
      return HopContext{round, ring(owner + round, parties), ring(owner + round + 1, parties),
                        owner};
    };

    for (int o = 0; o < parties; ++o) {
      adv.on_transit(context(o), held[static_cast<std::size_t>(o)].slots, rng);
    }

    for (int o = 0; o < parties; ++o) {
      const auto ctx = context(o);
      auto rec = run_detection(held[static_cast<std::size_t>(o)], ctx.receiver, params.threshold,
                               rng);
      rec.round = round;
      if (!rec.passed && !report.failed_detection) {
        report.failed_detection = report.detections.size();
      }
      report.detections.push_back(rec);
    }
    if (report.failed_detection) {
      report.aborted = true;
      adv.finish(people, report);
      return report;
    }
    for (int o = 0; o < parties; ++o) {
      adv.after_detection(context(o), held[static_cast<std::size_t>(o)], rng);
    }

    if (round < parties - 1) {
      for (int o = 0; o < parties; ++o) {
        const auto ctx = context(o);
        const auto& encoder = people[static_cast<std::size_t>(ctx.receiver)];
        auto& seq = held[static_cast<std::size_t>(o)];
        auto bits = adv.encoding_override(ctx, encoder);
        if (!bits) bits = encoder.subkey;
        report.encodings.push_back({round, ctx.receiver, o, seq.placeholder, *bits});
        seq = encode_sequence(std::move(seq), *bits);
      }
      // Sequences reaching their last encoder here wait for the step-6
      // barrier: they are not transmitted until the next round starts.
      for (int o = 0; o < parties; ++o) {
        const auto ctx = context(o);
        const HopContext next{round + 1, ctx.receiver, ring(ctx.receiver + 1, parties), o};
        held[static_cast<std::size_t>(o)] = send(std::move(held[static_cast<std::size_t>(o)]), next);
      }
    } else {
      std::vector<BitVector> finals;
      std::vector<BitVector> encoded;
      for (int o = 0; o < parties; ++o) {
        auto& owner = people[static_cast<std::size_t>(o)];
        auto keys = extract_key(owner, held[static_cast<std::size_t>(o)], rng);
        owner.extracted_key = keys.final_key;
        finals.push_back(std::move(keys.final_key));
        encoded.push_back(std::move(keys.encoded));
      }
      report.final_keys = std::move(finals);
      report.encoded_secrets = std::move(encoded);
    }
  }

  adv.finish(people, report);
  return report;
}

}  // namespace smqka
