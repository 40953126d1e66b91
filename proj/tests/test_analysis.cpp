#include <doctest.h>

#include <cmath>

#include "smqka/analysis.hpp"

using namespace smqka;

TEST_CASE("qubit_efficiency") {
  CHECK(qubit_efficiency(ProtocolLabel::smqka, 5, 1).value == Rational(1, 10));
  CHECK(qubit_efficiency(ProtocolLabel::liu_mqka, 5, 1).value == Rational(1, 40));
  CHECK(qubit_efficiency(ProtocolLabel::smqka, 2, 0).value == Rational(1, 2));
  CHECK(qubit_efficiency(ProtocolLabel::smqka, 4, Rational(1, 2)).value == Rational(1, 6));
  CHECK_THROWS_AS(qubit_efficiency(ProtocolLabel::smqka, 1, 1), ConfigError);
  CHECK_THROWS_AS(qubit_efficiency(ProtocolLabel::smqka, 3, -1), ConfigError);

  for (int parties = 2; parties <= 12; ++parties) {
    for (const auto& k : {Rational(0), Rational(1, 2), Rational(1), Rational(3)}) {
      const auto s = qubit_efficiency(ProtocolLabel::smqka, parties, k).value;
      const auto l = qubit_efficiency(ProtocolLabel::liu_mqka, parties, k).value;
      CHECK(s / l == Rational(parties - 1));
      CHECK(s > Rational(0));
      CHECK(qubit_efficiency(ProtocolLabel::smqka, parties + 1, k).value < s);
      CHECK(qubit_efficiency(ProtocolLabel::smqka, parties, k + Rational(1, 4)).value < s);
    }
  }
}

TEST_CASE("Rational") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2).num() == -1);
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("2") == Rational(2));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational(1, 10).to_string() == "1/10");
  CHECK(Rational(4).to_string() == "4");
  CHECK_THROWS(Rational::parse("x"));
  CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("detection_probability_oracle") {
  CHECK(detection_probability_oracle(Basis::x, Basis::z) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(detection_probability_oracle(Basis::x, Basis::x) == doctest::Approx(0.0));
  CHECK(detection_probability_oracle(Basis::y, Basis::x) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(detection_probability_oracle(Basis::y, Basis::y) == doctest::Approx(0.0));
  CHECK(detection_probability_oracle(Basis::x, Basis::y) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(detection_probability_oracle(Basis::y, Basis::z) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("xor_oracle") {
  const std::vector<BitVector> three{bits_from_string("0101"), bits_from_string("0011"),
                                     bits_from_string("0110")};
  CHECK(to_string(xor_oracle(three)) == "0000");
  const std::vector<BitVector> one{bits_from_string("1101")};
  CHECK(to_string(xor_oracle(one)) == "1101");
  const std::vector<BitVector> twice{bits_from_string("1101"), bits_from_string("1101")};
  CHECK(to_string(xor_oracle(twice)) == "0000");
  const std::vector<BitVector> ragged{bits_from_string("1"), bits_from_string("10")};
  CHECK_THROWS(xor_oracle(ragged));
}

TEST_CASE("binomial_halfwidth") {
  CHECK(binomial_halfwidth(50, 100) == doctest::Approx(1.959963984540054 * 0.05));
  CHECK(binomial_halfwidth(100, 100) == 0.0);
  // Clopper-Pearson with zero successes: upper = 1 - (alpha/2)^(1/n).
  CHECK(binomial_halfwidth(0, 10) == doctest::Approx((1.0 - std::pow(0.025, 0.1)) / 2.0));
  CHECK(binomial_halfwidth(10, 10) == doctest::Approx((1.0 - std::pow(0.025, 0.1)) / 2.0));
}

TEST_CASE("monte_carlo") {
  ScenarioConfig c;
  c.parties = 4;
  c.n = 16;
  c.k = 1;

  SUBCASE("honest trials are all correct") {
    const auto mc = monte_carlo(c, 100, 1);
    CHECK(mc.aggregate.correctness_rate == 1.0);
    CHECK(mc.aggregate.abort_rate == 0.0);
    CHECK(mc.aggregate.mean_error_rate == 0.0);
    CHECK(mc.outcomes.size() == 100);
  }
  SUBCASE("privacy attack always succeeds and never aborts") {
    c.attack = AttackKind::privacy;
    const auto agg = monte_carlo(c, 100, 2).aggregate;
    CHECK(agg.attack_success_rate == 1.0);
    CHECK(agg.abort_rate == 0.0);
  }
  SUBCASE("intercept-resend with four decoys") {
    c.parties = 3;
    c.n = 4;
    c.attack = AttackKind::outside_intercept_resend;
    const auto agg = monte_carlo(c, 10000, 3, 4).aggregate;
    // Each of the four decoys errs with probability 1/2: 1 - 2^-4.
    CHECK(std::abs(agg.abort_rate - 0.9375) <= 0.02);
  }
  SUBCASE("same master seed, same result, any thread count") {
    c.attack = AttackKind::fairness_all_but_one;
    const auto a = monte_carlo(c, 40, 99, 1);
    const auto b = monte_carlo(c, 40, 99, 4);
    CHECK(a.outcomes == b.outcomes);
    CHECK(a.aggregate == b.aggregate);
    CHECK(a.aggregate.correctness_rate == 1.0);
    CHECK(monte_carlo(c, 40, 100).outcomes != a.outcomes);
  }
  SUBCASE("trial seeds follow the split rule") {
    const auto mc = monte_carlo(c, 3, 5);
    for (std::size_t i = 0; i < 3; ++i) CHECK(mc.outcomes[i].seed == Rng::split(5, i));
  }
}
