#include "smqka/scenario.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <system_error>

namespace smqka {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(std::string_view field, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(field), "expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

double parse_real(std::string_view field, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(std::string(field), "expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<ParticipantId> parse_id_list(std::string_view value) {
  std::string_view rest = trim(value);
  if (rest.size() >= 2 && rest.front() == '[' && rest.back() == ']') {
    rest = trim(rest.substr(1, rest.size() - 2));
  }
  std::vector<ParticipantId> ids;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    ids.push_back(parse_integer<ParticipantId>("honest_set", trim(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest = trim(rest.substr(comma + 1));
    if (rest.empty()) throw ConfigError("honest_set", "trailing comma");
  }
  return ids;
}

bool is_fairness(AttackKind a) {
  return a == AttackKind::fairness_all_but_one || a == AttackKind::fairness_nonadjacent;
}

}  // namespace

ProtocolParams ScenarioConfig::protocol_params() const {
  ProtocolParams p;
  p.parties = parties;
  p.n = n;
  p.k = k;
  p.threshold = threshold;
  return p;
}

std::vector<ParticipantId> ScenarioConfig::attacked_honest_set() const {
  if (attack == AttackKind::fairness_all_but_one) return {parties - 1};
  if (attack == AttackKind::fairness_nonadjacent && honest_set) return *honest_set;
  return {};
}

void validate(const ScenarioConfig& c) {
  if (c.parties < 3) throw ConfigError("N", "at least 3 participants required");
  if (c.n < 1) throw ConfigError("n", "must be >= 1");
  decoy_count(c.n, c.k);
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0)) {
    throw ConfigError("threshold", "must lie in [0, 1]");
  }
  if (c.trials < 1) throw ConfigError("trials", "must be >= 1");

  const bool needs_set = c.attack == AttackKind::fairness_nonadjacent;
  if (needs_set && !c.honest_set) {
    throw ConfigError("honest_set", "required for attack fairness_nonadjacent");
  }
  if (!needs_set && c.honest_set) {
    throw ConfigError("honest_set", "only valid for attack fairness_nonadjacent");
  }
  if (c.honest_set) validate_honest_set(c.parties, *c.honest_set);

  if (c.desired_key) {
    if (!is_fairness(c.attack)) {
      throw ConfigError("desired_key", "only valid for the fairness attacks");
    }
    if (const auto* bits = std::get_if<BitVector>(&*c.desired_key); bits && bits->size() != c.n) {
      throw ConfigError("desired_key", "length " + std::to_string(bits->size()) +
                                           " differs from n = " + std::to_string(c.n));
    }
  }
  if (c.target) {
    if (c.attack != AttackKind::privacy) {
      throw ConfigError("target", "only valid for attack privacy");
    }
    if (*c.target < 0 || *c.target >= c.parties) {
      throw ConfigError("target", "id " + std::to_string(*c.target) + " outside [0, N)");
    }
  }
}

ScenarioConfig parse_config(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string_view::npos) sep = line.find(':');
    if (sep == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, sep)));
    const std::string value(trim(line.substr(sep + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "missing key");
    if (!entries.emplace(key, std::make_pair(value, line_no)).second) {
      throw ConfigError(key, "given twice (line " + std::to_string(line_no) + ")");
    }
  }

  ScenarioConfig c;
  for (const auto& [key, entry] : entries) {
    const std::string& v = entry.first;
    if (key == "N") {
      c.parties = parse_integer<int>(key, v);
    } else if (key == "n") {
      c.n = parse_integer<std::size_t>(key, v);
    } else if (key == "k") {
      c.k = parse_real(key, v);
    } else if (key == "threshold") {
      c.threshold = parse_real(key, v);
    } else if (key == "attack") {
      c.attack = attack_from_string(v);
    } else if (key == "honest_set") {
      c.honest_set = parse_id_list(v);
    } else if (key == "desired_key") {
      if (v == "random") {
        c.desired_key = RandomKey{};
      } else {
        try {
          c.desired_key = bits_from_string(v);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(key, e.what());
        }
      }
    } else if (key == "seed") {
      c.seed = parse_integer<std::uint64_t>(key, v);
    } else if (key == "trials") {
      c.trials = parse_integer<std::size_t>(key, v);
    } else if (key == "target") {
      c.target = parse_integer<ParticipantId>(key, v);
    } else if (key == "tap_basis") {
      try {
        c.tap_basis = basis_from_string(v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    } else {
      throw ConfigError(key, "unknown key (line " + std::to_string(entry.second) + ")");
    }
  }
  validate(c);
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "N = " << c.parties << '\n'
      << "n = " << c.n << '\n'
      << "k = " << format_real(c.k) << '\n'
      << "threshold = " << format_real(c.threshold) << '\n'
      << "attack = " << to_string(c.attack) << '\n';
  if (c.honest_set) {
    out << "honest_set = ";
    for (std::size_t i = 0; i < c.honest_set->size(); ++i) {
      out << (i ? "," : "") << (*c.honest_set)[i];
    }
    out << '\n';
  }
  if (c.desired_key) {
    out << "desired_key = ";
    if (const auto* bits = std::get_if<BitVector>(&*c.desired_key)) {
      out << to_string(*bits);
    } else {
      out << "random";
    }
    out << '\n';
  }
  out << "seed = " << c.seed << '\n' << "trials = " << c.trials << '\n';
  if (c.target) out << "target = " << *c.target << '\n';
  if (c.tap_basis != Basis::z) out << "tap_basis = " << to_string(c.tap_basis) << '\n';
  return out.str();
}

RunReport run_protocol(const ScenarioConfig& config, Rng& rng) {
  validate(config);
  const auto params = config.protocol_params();

  std::vector<BitVector> subkeys;
  subkeys.reserve(static_cast<std::size_t>(config.parties));
  for (int i = 0; i < config.parties; ++i) subkeys.push_back(rng.bits(config.n));

  std::optional<BitVector> desired;
  if (is_fairness(config.attack)) {
    if (config.desired_key && std::holds_alternative<BitVector>(*config.desired_key)) {
      desired = std::get<BitVector>(*config.desired_key);
    } else {
      desired = rng.bits(config.n);
    }
  }

  std::unique_ptr<Adversary> adversary;
  switch (config.attack) {
    case AttackKind::none:
      break;
    case AttackKind::privacy:
      adversary = std::make_unique<PrivacyAttack>(config.parties, config.privacy_target());
      break;
    case AttackKind::fairness_all_but_one:
    case AttackKind::fairness_nonadjacent:
      adversary = std::make_unique<CollusionAttack>(
          plan_generalized_attack(config.parties, config.attacked_honest_set(), *desired));
      break;
    case AttackKind::outside_intercept_resend:
      adversary = std::make_unique<InterceptResendAttack>(config.tap_basis);
      break;
  }

  auto report = execute_protocol(params, std::move(subkeys), adversary.get(), rng);
  report.attack = std::string(to_string(config.attack));
  report.desired_key = std::move(desired);
  return report;
}

}  // namespace smqka
