#include "smqka/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/beta.hpp>

namespace smqka {

namespace {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;
using Mat2 = std::array<Complex, 4>;  // row-major

Vec2 eigenvector(Basis basis, int index) {
  const double r = 1.0 / std::sqrt(2.0);
  const double s = index ? -1.0 : 1.0;
  switch (basis) {
    case Basis::z: return index ? Vec2{0.0, 1.0} : Vec2{1.0, 0.0};
    case Basis::x: return {r, s * r};
    case Basis::y: return {r, Complex{0.0, s * r}};
  }
  throw std::invalid_argument("bad basis");
}

Mat2 projector(Basis basis, int index) {
  const auto v = eigenvector(basis, index);
  return {v[0] * std::conj(v[0]), v[0] * std::conj(v[1]), v[1] * std::conj(v[0]),
          v[1] * std::conj(v[1])};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

Mat2 add(const Mat2& a, const Mat2& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }

double trace(const Mat2& a) { return (a[0] + a[3]).real(); }

bool is_fairness(AttackKind a) {
  return a == AttackKind::fairness_all_but_one || a == AttackKind::fairness_nonadjacent;
}

}  // namespace

std::string_view to_string(ProtocolLabel label) {
  return label == ProtocolLabel::smqka ? "SMQKA" : "LiuMQKA";
}

EfficiencyFigure qubit_efficiency(ProtocolLabel label, int parties, Rational k) {
  if (parties < 2) throw ConfigError("N", "qubit efficiency needs N >= 2");
  if (k < Rational(0)) throw ConfigError("k", "detection rate must be >= 0");
  Rational denom = (k + Rational(1)) * Rational(parties);
  if (label == ProtocolLabel::liu_mqka) denom = denom * Rational(parties - 1);
  return {label, parties, k, Rational(1) / denom};
}

double detection_probability_oracle(Basis decoy_basis, Basis tap_basis) {
  double total = 0.0;
  for (int prepared = 0; prepared < 2; ++prepared) {
    const Mat2 rho = projector(decoy_basis, prepared);
    Mat2 after{};
    for (int outcome = 0; outcome < 2; ++outcome) {
      const Mat2 p = projector(tap_basis, outcome);
      after = add(after, mul(mul(p, rho), p));
    }
    total += trace(mul(after, projector(decoy_basis, 1 - prepared)));
  }
  return total / 2.0;
}

BitVector xor_oracle(std::span<const BitVector> subkeys) {
  if (subkeys.empty()) throw std::invalid_argument("xor_oracle: no operands");
  BitVector out(subkeys.front().size(), 0);
  for (const auto& key : subkeys) {
    if (key.size() != out.size()) throw std::invalid_argument("xor_oracle: length mismatch");
    for (std::size_t j = 0; j < key.size(); ++j) out[j] = static_cast<Bit>(out[j] ^ key[j]);
  }
  return out;
}

double headline_rate(AttackKind attack, const TrialAggregate& agg) {
  switch (attack) {
    case AttackKind::none: return agg.correctness_rate;
    case AttackKind::outside_intercept_resend: return agg.abort_rate;
    default: return agg.attack_success_rate;
  }
}

double binomial_halfwidth(std::size_t successes, std::size_t trials) {
  if (trials == 0) return 0.0;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  if (trials >= 100) return 1.959963984540054 * std::sqrt(p * (1.0 - p) / t);
  const double alpha = 0.05;
  const double x = static_cast<double>(successes);
  const double lo =
      successes == 0 ? 0.0
                     : boost::math::quantile(boost::math::beta_distribution<>(x, t - x + 1), alpha / 2);
  const double hi = successes == trials
                        ? 1.0
                        : boost::math::quantile(boost::math::beta_distribution<>(x + 1, t - x),
                                                1 - alpha / 2);
  return (hi - lo) / 2.0;
}

TrialOutcome digest(const ScenarioConfig& config, const RunReport& report, std::size_t index,
                    std::uint64_t seed) {
  TrialOutcome out;
  out.index = index;
  out.seed = seed;
  out.aborted = report.aborted;
  out.attack_flags = report.attack_flags;
  out.desired_key = report.desired_key;
  out.final_keys = report.final_keys;
  for (const auto& d : report.detections) {
    out.decoys_checked += d.decoys_checked;
    out.decoy_errors += d.errors;
  }

  if (report.final_keys) {
    const auto& keys = *report.final_keys;
    if (is_fairness(config.attack)) {
      const auto honest = config.attacked_honest_set();
      out.correct = report.desired_key &&
                    std::all_of(honest.begin(), honest.end(), [&](ParticipantId h) {
                      return keys[static_cast<std::size_t>(h)] == *report.desired_key;
                    });
    } else {
      const auto expected = xor_oracle(report.subkeys);
      out.correct = std::all_of(keys.begin(), keys.end(),
                                [&](const BitVector& k) { return k == expected; });
    }
  }

  auto flag = [&](const char* name) {
    auto it = report.attack_flags.find(name);
    return it != report.attack_flags.end() && it->second;
  };
  switch (config.attack) {
    case AttackKind::none: out.attack_success = false; break;
    case AttackKind::privacy: out.attack_success = flag("privacy"); break;
    case AttackKind::fairness_all_but_one:
    case AttackKind::fairness_nonadjacent: out.attack_success = flag("fairness"); break;
    case AttackKind::outside_intercept_resend:
      out.attack_success = flag("eavesdrop_undetected");
      break;
  }
  return out;
}

TrialAggregate aggregate(AttackKind attack, std::span<const TrialOutcome> outcomes) {
  TrialAggregate agg;
  agg.trials = outcomes.size();
  if (outcomes.empty()) return agg;
  std::size_t correct = 0, success = 0, aborts = 0, checked = 0, errors = 0;
  for (const auto& o : outcomes) {
    correct += o.correct;
    success += o.attack_success;
    aborts += o.aborted;
    checked += o.decoys_checked;
    errors += o.decoy_errors;
  }
  const double t = static_cast<double>(agg.trials);
  agg.correctness_rate = static_cast<double>(correct) / t;
  agg.attack_success_rate = static_cast<double>(success) / t;
  agg.abort_rate = static_cast<double>(aborts) / t;
  agg.mean_error_rate = checked == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(checked);
  std::size_t headline = success;
  if (attack == AttackKind::none) headline = correct;
  if (attack == AttackKind::outside_intercept_resend) headline = aborts;
  agg.confidence_halfwidth = binomial_halfwidth(headline, agg.trials);
  return agg;
}

MonteCarloResult monte_carlo(const ScenarioConfig& config, std::size_t trials,
                             std::uint64_t master_seed, unsigned threads) {
  validate(config);
  if (trials < 1) throw ConfigError("trials", "must be >= 1");

  MonteCarloResult result;
  result.outcomes.resize(trials);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < trials; i = next++) {
        const auto seed = Rng::split(master_seed, i);
        Rng rng(seed);
        result.outcomes[i] = digest(config, run_protocol(config, rng), i, seed);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
  };

  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(trials, 256)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  result.aggregate = aggregate(config.attack, result.outcomes);
  return result;
}

}  // namespace smqka
