#include <doctest.h>

#include "smqka/report.hpp"

using namespace smqka;

namespace {

ReportDocument sample(AttackKind attack) {
  ScenarioConfig c;
  c.parties = 5;
  c.n = 8;
  c.k = 0.5;
  c.attack = attack;
  c.seed = 0xfeedfacecafebeefULL;
  c.trials = 12;
  if (attack == AttackKind::fairness_nonadjacent) {
    c.honest_set = std::vector<ParticipantId>{1, 3};
    c.desired_key = RandomKey{};
  }
  if (attack == AttackKind::outside_intercept_resend) c.tap_basis = Basis::x;
  return make_report(c, monte_carlo(c, c.trials, c.seed));
}

}  // namespace

TEST_CASE("records round-trip losslessly") {
  for (auto attack : {AttackKind::none, AttackKind::privacy, AttackKind::fairness_nonadjacent,
                      AttackKind::outside_intercept_resend}) {
    const auto doc = sample(attack);
    const auto text = write_records(doc);
    const auto back = read_records(text);
    CHECK(back == doc);
    CHECK(write_records(back) == text);
  }
}

TEST_CASE("records layout") {
  const auto doc = sample(AttackKind::none);
  CHECK(doc.efficiency.size() == 2);
  CHECK(doc.efficiency[0].value == Rational(2, 15));  // 1/((1/2+1)*5)
  const auto text = write_records(doc);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 1 + doc.trials.size() + 1 + 2);
  CHECK(text.rfind("{\"config\":", 0) == 0);
  CHECK(text.find("\"schema\":\"smqka-report\"") != std::string::npos);
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(read_records(""), std::runtime_error);
  CHECK_THROWS_AS(read_records("not json\n"), std::runtime_error);
  auto text = write_records(sample(AttackKind::none));
  auto bad_schema = text;
  bad_schema.replace(bad_schema.find("smqka-report"), 12, "other-report");
  CHECK_THROWS_AS(read_records(bad_schema), std::runtime_error);
  auto bad_version = text;
  bad_version.replace(bad_version.find("\"version\":1"), 11, "\"version\":9");
  CHECK_THROWS_AS(read_records(bad_version), std::runtime_error);
}

TEST_CASE("summary mentions the headline figures") {
  const auto text = write_summary(sample(AttackKind::privacy));
  CHECK(text.find("privacy") != std::string::npos);
  CHECK(text.find("attack_success_rate") != std::string::npos);
  CHECK(text.find("2/15") != std::string::npos);
}
