#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smqka/bits.hpp"
#include "smqka/errors.hpp"
#include "smqka/qubit.hpp"
#include "smqka/rng.hpp"

namespace smqka {

using ParticipantId = int;

enum class SlotKind { data, decoy };

struct PrepRecord {
  Basis basis;
  Bit index;

  friend bool operator==(const PrepRecord&, const PrepRecord&) = default;
};

// One particle of a transmitted sequence. `prep` is the preparer's secret;
// only the preparing party's side of the simulation reads it.
struct ParticleSlot {
  SlotKind kind;
  PureState state;
  PrepRecord prep;
};

struct SequenceInTransit {
  std::vector<ParticleSlot> slots;
  ParticipantId owner = 0;
  ParticipantId hop_sender = 0;
  // Sorted; held by hop_sender until the detection announcement.
  std::vector<std::size_t> decoy_positions;
  // Set while colluders have swapped the owner's particles for stand-ins.
  bool placeholder = false;
};

struct Hop {
  ParticipantId sender;
  ParticipantId receiver;

  friend bool operator==(const Hop&, const Hop&) = default;
};

struct DetectionRecord {
  Hop hop;
  ParticipantId owner = 0;
  int round = 0;
  std::size_t decoys_checked = 0;
  std::size_t errors = 0;
  double error_rate = 0.0;
  bool passed = true;
};

enum class Strategy { honest, dishonest };

struct ParticipantState {
  ParticipantId id = 0;
  BitVector subkey;
  Strategy strategy = Strategy::honest;
  // Z-basis records of the data particles this participant prepared.
  std::vector<PrepRecord> prep_log;
  std::optional<BitVector> extracted_key;
};

// Which decoy states are drawn. The protocol uses all four X/Y eigenstates;
// the single-basis variants exist for detection statistics.
enum class DecoyBases { x_and_y, x_only, y_only };

struct ProtocolParams {
  int parties = 3;
  std::size_t n = 1;
  double k = 0.0;
  double threshold = 0.0;
  DecoyBases decoy_bases = DecoyBases::x_and_y;
};

// Order of events inside one lockstep round.
enum class Phase { preparation, transit, detection, encoding, extraction };

struct Stamp {
  int round;
  Phase phase;

  friend auto operator<=>(const Stamp&, const Stamp&) = default;
};

// One hop of the sequence owned by `owner` in round `round`.
struct HopContext {
  int round;
  ParticipantId sender;
  ParticipantId receiver;
  ParticipantId owner;
};

struct EncodingEvent {
  int round;
  ParticipantId encoder;
  ParticipantId owner;
  bool on_placeholder;
  BitVector bits;
};

struct RunReport {
  ProtocolParams params;
  std::string attack = "none";
  std::vector<BitVector> subkeys;
  std::optional<BitVector> desired_key;
  // Absent iff aborted.
  std::optional<std::vector<BitVector>> final_keys;
  // Per owner, the XOR of all encodings read back at extraction.
  std::optional<std::vector<BitVector>> encoded_secrets;
  std::vector<DetectionRecord> detections;
  bool aborted = false;
  // Index into `detections` of the first failed check.
  std::optional<std::size_t> failed_detection;
  std::map<std::string, bool> attack_flags;
  std::vector<EncodingEvent> encodings;
};

// Hooks through which dishonest participants and outside eavesdroppers act
// on a run. The default implementation is an all-honest, untapped run.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual Strategy strategy(ParticipantId) const { return Strategy::honest; }
  // Replacement for the data slots `p` prepares in step 1; must log p.prep_log.
  virtual std::optional<std::vector<ParticleSlot>> prepare_override(ParticipantState& /*p*/,
                                                                    std::size_t /*n*/) {
    return std::nullopt;
  }
  virtual void on_transit(const HopContext&, std::vector<ParticleSlot>& /*slots*/, Rng&) {}
  virtual void after_detection(const HopContext&, SequenceInTransit&, Rng&) {}
  // Bits the receiver of `ctx` applies instead of its sub-key.
  virtual std::optional<BitVector> encoding_override(const HopContext&,
                                                     const ParticipantState& /*encoder*/) {
    return std::nullopt;
  }
  // Called with the data-only sequence before decoys are inserted for `ctx`.
  virtual void before_send(const HopContext&, SequenceInTransit&) {}
  virtual void finish(std::span<const ParticipantState>, RunReport&) {}
};

// kn for the given data count; throws ConfigError("k", ...) unless k >= 0 and
// k*n is an integer.
std::size_t decoy_count(std::size_t n, double k);

std::vector<ParticleSlot> init_sequence(ParticipantState& p, std::size_t n, Rng& rng);

SequenceInTransit insert_decoys(std::vector<ParticleSlot> data, ParticipantId owner,
                                ParticipantId sender, double k, Rng& rng,
                                DecoyBases bases = DecoyBases::x_and_y);

// Simulates the announce/measure/report exchange for the decoys of `seq` and
// removes them. The receiver measures in the announced bases only.
DetectionRecord run_detection(SequenceInTransit& seq, ParticipantId receiver, double threshold,
                              Rng& rng);

SequenceInTransit encode_sequence(SequenceInTransit seq, const BitVector& bits);

struct KeyExtraction {
  BitVector encoded;    // XOR of every encoding applied to the owner's particles
  BitVector final_key;  // owner's sub-key XOR encoded
};

KeyExtraction extract_key(const ParticipantState& owner, const SequenceInTransit& seq, Rng& rng);

// Runs all N circulating sequences in lockstep rounds. Round r moves every
// sequence one hop; rounds 0..N-2 end with encoding and re-decoying, round
// N-1 returns each sequence to its owner for extraction. `adversary` may be
// null for an honest run.
RunReport execute_protocol(const ProtocolParams& params, std::vector<BitVector> subkeys,
                           Adversary* adversary, Rng& rng);

}  // namespace smqka
