#include <doctest.h>

#include <random>

#include "smqka/scenario.hpp"

using namespace smqka;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_config accepts the documented format") {
  const auto c = parse_config(
      "# honest five\n"
      "N = 5\nn = 64\nk = 1\nthreshold = 0\nattack = none\nseed = 42\ntrials = 100\n");
  CHECK(c.parties == 5);
  CHECK(c.n == 64);
  CHECK(c.k == 1.0);
  CHECK(c.attack == AttackKind::none);
  CHECK(c.seed == 42);
  CHECK(c.trials == 100);

  const auto colon = parse_config("N: 7\nn: 8\nk: 0.5\nattack: fairness_nonadjacent\n"
                                  "honest_set: [0, 2, 4]\ndesired_key: 10101010\n");
  CHECK(colon.honest_set == std::vector<ParticipantId>{0, 2, 4});
  CHECK(colon.desired_key == DesiredKey{bits_from_string("10101010")});
}

TEST_CASE("parse_config reports the offending field") {
  CHECK(field_of("N = 5\nn = 4\nk = 0.3\n") == "k");
  CHECK(field_of("N = 5\nn = 7\nk = 0.5\n") == "k");
  // 0.3 * 10 = 3 decoys: integral, so accepted.
  CHECK(field_of("N = 5\nn = 10\nk = 0.3\n") == "");
  CHECK(field_of("N = 4\nn = 4\nattack = fairness_nonadjacent\nhonest_set = 0,1\n") ==
        "honest_set");
  CHECK(field_of("N = 4\nn = 4\nattack = fairness_nonadjacent\n") == "honest_set");
  CHECK(field_of("N = 4\nn = 4\nhonest_set = 0,2\n") == "honest_set");
  CHECK(field_of("N = 2\n") == "N");
  CHECK(field_of("N = 3\nn = 0\n") == "n");
  CHECK(field_of("N = x\n") == "N");
  CHECK(field_of("N = 3\nthreshold = 1.5\n") == "threshold");
  CHECK(field_of("N = 3\nattack = trojan\n") == "attack");
  CHECK(field_of("N = 3\ncolour = red\n") == "colour");
  CHECK(field_of("N = 3\nN = 4\n") == "N");
  CHECK(field_of("N = 3\njust words\n") == "line 2");
  CHECK(field_of("N = 3\nn = 4\nattack = fairness_all_but_one\ndesired_key = 101\n") ==
        "desired_key");
  CHECK(field_of("N = 3\nn = 2\nattack = fairness_all_but_one\ndesired_key = 1x\n") ==
        "desired_key");
  CHECK(field_of("N = 3\nn = 2\ndesired_key = random\n") == "desired_key");
  CHECK(field_of("N = 3\ntarget = 1\n") == "target");
  CHECK(field_of("N = 3\nattack = privacy\ntarget = 3\n") == "target");
  CHECK(field_of("N = 3\ntap_basis = Q\n") == "tap_basis");
  CHECK(field_of("N = 3\ntrials = 0\n") == "trials");
}

TEST_CASE("serialize then parse is the identity on valid configs") {
  std::mt19937_64 gen(17);
  const AttackKind attacks[] = {AttackKind::none, AttackKind::privacy,
                                AttackKind::fairness_all_but_one, AttackKind::fairness_nonadjacent,
                                AttackKind::outside_intercept_resend};
  for (int i = 0; i < 500; ++i) {
    ScenarioConfig c;
    c.parties = 3 + static_cast<int>(gen() % 10);
    c.n = 1 + gen() % 40;
    const std::size_t kn = gen() % 90;
    c.k = static_cast<double>(kn) / static_cast<double>(c.n);
    if (std::abs(c.k * static_cast<double>(c.n) - std::round(c.k * static_cast<double>(c.n))) > 1e-9) continue;
    c.threshold = static_cast<double>(gen() % 1000) / 999.0;
    c.attack = attacks[gen() % 5];
    c.seed = gen();
    c.trials = 1 + gen() % 10000;
    if (c.attack == AttackKind::fairness_nonadjacent) {
      std::vector<ParticipantId> set;
      for (int id = static_cast<int>(gen() % 2); id < c.parties - 1; id += 2 + static_cast<int>(gen() % 2)) {
        set.push_back(id);
      }
      if (set.empty()) set.push_back(0);
      c.honest_set = set;
    }
    if (c.attack == AttackKind::fairness_all_but_one || c.attack == AttackKind::fairness_nonadjacent) {
      if (gen() % 2) {
        BitVector key(c.n);
        for (auto& b : key) b = static_cast<Bit>(gen() & 1);
        c.desired_key = key;
      } else {
        c.desired_key = RandomKey{};
      }
    }
    if (c.attack == AttackKind::privacy && gen() % 2) {
      c.target = static_cast<ParticipantId>(gen() % static_cast<unsigned>(c.parties));
    }
    if (gen() % 3 == 0) c.tap_basis = Basis::y;
    validate(c);
    INFO(serialize_config(c));
    CHECK(parse_config(serialize_config(c)) == c);
  }
}

TEST_CASE("run_protocol echoes a random desired key") {
  auto c = parse_config("N = 5\nn = 16\nk = 1\nattack = fairness_all_but_one\n");
  Rng a(1), b(2);
  const auto ra = run_protocol(c, a);
  const auto rb = run_protocol(c, b);
  REQUIRE(ra.desired_key);
  CHECK(ra.desired_key->size() == 16);
  CHECK(ra.desired_key != rb.desired_key);
  CHECK((*ra.final_keys)[4] == *ra.desired_key);

  c.desired_key = bits_from_string("1111000011110000");
  Rng r(3);
  CHECK(to_string((*run_protocol(c, r).final_keys)[4]) == "1111000011110000");
}
