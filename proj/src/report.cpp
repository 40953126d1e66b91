#include "smqka/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace smqka {

namespace {

using nlohmann::json;

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["N"] = c.parties;
  j["n"] = c.n;
  j["k"] = c.k;
  j["threshold"] = c.threshold;
  j["attack"] = std::string(to_string(c.attack));
  if (c.honest_set) j["honest_set"] = *c.honest_set;
  if (c.desired_key) {
    if (const auto* bits = std::get_if<BitVector>(&*c.desired_key)) {
      j["desired_key"] = to_string(*bits);
    } else {
      j["desired_key"] = "random";
    }
  }
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  if (c.target) j["target"] = *c.target;
  j["tap_basis"] = std::string(to_string(c.tap_basis));
  return j;
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  c.parties = j.at("N").get<int>();
  c.n = j.at("n").get<std::size_t>();
  c.k = j.at("k").get<double>();
  c.threshold = j.at("threshold").get<double>();
  c.attack = attack_from_string(j.at("attack").get<std::string>());
  if (j.contains("honest_set")) c.honest_set = j["honest_set"].get<std::vector<ParticipantId>>();
  if (j.contains("desired_key")) {
    const auto text = j["desired_key"].get<std::string>();
    if (text == "random") {
      c.desired_key = RandomKey{};
    } else {
      c.desired_key = bits_from_string(text);
    }
  }
  c.seed = j.at("seed").get<std::uint64_t>();
  c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("target")) c.target = j["target"].get<ParticipantId>();
  c.tap_basis = basis_from_string(j.at("tap_basis").get<std::string>());
  return c;
}

json keys_to_json(const std::vector<BitVector>& keys) {
  json arr = json::array();
  for (const auto& k : keys) arr.push_back(to_string(k));
  return arr;
}

ProtocolLabel label_from_string(const std::string& s) {
  if (s == "SMQKA") return ProtocolLabel::smqka;
  if (s == "LiuMQKA") return ProtocolLabel::liu_mqka;
  throw std::runtime_error("unknown protocol label '" + s + "'");
}

}  // namespace

ReportDocument make_report(const ScenarioConfig& config, MonteCarloResult result) {
  ReportDocument doc;
  doc.config = config;
  doc.trials = std::move(result.outcomes);
  doc.aggregate = result.aggregate;
  const auto kn = static_cast<std::int64_t>(decoy_count(config.n, config.k));
  const Rational k(kn, static_cast<std::int64_t>(config.n));
  doc.efficiency.push_back(qubit_efficiency(ProtocolLabel::smqka, config.parties, k));
  doc.efficiency.push_back(qubit_efficiency(ProtocolLabel::liu_mqka, config.parties, k));
  return doc;
}

std::string write_records(const ReportDocument& doc) {
  std::ostringstream out;
  json header{{"record", "header"},
              {"schema", std::string(kReportSchema)},
              {"version", doc.schema_version},
              {"config", config_to_json(doc.config)}};
  out << header.dump() << '\n';

  for (const auto& t : doc.trials) {
    json j{{"record", "trial"},
           {"index", t.index},
           {"seed", t.seed},
           {"aborted", t.aborted},
           {"correct", t.correct},
           {"attack_success", t.attack_success},
           {"decoys_checked", t.decoys_checked},
           {"decoy_errors", t.decoy_errors},
           {"flags", t.attack_flags}};
    if (t.desired_key) j["desired_key"] = to_string(*t.desired_key);
    if (t.final_keys) j["final_keys"] = keys_to_json(*t.final_keys);
    out << j.dump() << '\n';
  }

  const auto& a = doc.aggregate;
  json agg{{"record", "aggregate"},
           {"trials", a.trials},
           {"correctness_rate", a.correctness_rate},
           {"attack_success_rate", a.attack_success_rate},
           {"abort_rate", a.abort_rate},
           {"mean_error_rate", a.mean_error_rate},
           {"confidence_halfwidth", a.confidence_halfwidth}};
  out << agg.dump() << '\n';

  for (const auto& e : doc.efficiency) {
    json j{{"record", "efficiency"},
           {"protocol", std::string(to_string(e.label))},
           {"N", e.parties},
           {"k", e.k.to_string()},
           {"value", e.value.to_string()}};
    out << j.dump() << '\n';
  }
  return out.str();
}

ReportDocument read_records(std::string_view text) {
  ReportDocument doc;
  bool have_header = false;
  bool have_aggregate = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      const auto kind = j.at("record").get<std::string>();
      if (kind == "header") {
        if (j.at("schema").get<std::string>() != kReportSchema) {
          throw std::runtime_error("unexpected schema");
        }
        doc.schema_version = j.at("version").get<int>();
        if (doc.schema_version != kReportSchemaVersion) {
          throw std::runtime_error("unsupported schema version " +
                                   std::to_string(doc.schema_version));
        }
        doc.config = config_from_json(j.at("config"));
        have_header = true;
      } else if (kind == "trial") {
        TrialOutcome t;
        t.index = j.at("index").get<std::size_t>();
        t.seed = j.at("seed").get<std::uint64_t>();
        t.aborted = j.at("aborted").get<bool>();
        t.correct = j.at("correct").get<bool>();
        t.attack_success = j.at("attack_success").get<bool>();
        t.decoys_checked = j.at("decoys_checked").get<std::size_t>();
        t.decoy_errors = j.at("decoy_errors").get<std::size_t>();
        t.attack_flags = j.at("flags").get<std::map<std::string, bool>>();
        if (j.contains("desired_key")) {
          t.desired_key = bits_from_string(j["desired_key"].get<std::string>());
        }
        if (j.contains("final_keys")) {
          std::vector<BitVector> keys;
          for (const auto& k : j["final_keys"]) keys.push_back(bits_from_string(k.get<std::string>()));
          t.final_keys = std::move(keys);
        }
        doc.trials.push_back(std::move(t));
      } else if (kind == "aggregate") {
        auto& a = doc.aggregate;
        a.trials = j.at("trials").get<std::size_t>();
        a.correctness_rate = j.at("correctness_rate").get<double>();
        a.attack_success_rate = j.at("attack_success_rate").get<double>();
        a.abort_rate = j.at("abort_rate").get<double>();
        a.mean_error_rate = j.at("mean_error_rate").get<double>();
        a.confidence_halfwidth = j.at("confidence_halfwidth").get<double>();
        have_aggregate = true;
      } else if (kind == "efficiency") {
        doc.efficiency.push_back({label_from_string(j.at("protocol").get<std::string>()),
                                  j.at("N").get<int>(),
                                  Rational::parse(j.at("k").get<std::string>()),
                                  Rational::parse(j.at("value").get<std::string>())});
      } else {
        throw std::runtime_error("unknown record type '" + kind + "'");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("report line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("report has no header record");
  if (!have_aggregate) throw std::runtime_error("report has no aggregate record");
  return doc;
}

std::string write_summary(const ReportDocument& doc) {
  const auto& c = doc.config;
  const auto& a = doc.aggregate;
  std::ostringstream out;
  out << std::left << std::fixed << std::setprecision(4);
  out << "scenario   " << to_string(c.attack) << '\n';
  out << "N=" << c.parties << "  n=" << c.n << "  k=" << c.k << "  threshold=" << c.threshold
      << "  seed=" << c.seed << '\n';
  if (c.honest_set) {
    out << "honest     ";
    for (std::size_t i = 0; i < c.honest_set->size(); ++i) out << (i ? "," : "") << (*c.honest_set)[i];
    out << '\n';
  }
  out << std::string(44, '-') << '\n';
  auto row = [&](const char* name, double value) {
    out << std::setw(28) << name << std::right << std::setw(16) << value << std::left << '\n';
  };
  out << std::setw(28) << "trials" << std::right << std::setw(16) << a.trials << std::left << '\n';
  row("correctness_rate", a.correctness_rate);
  row("attack_success_rate", a.attack_success_rate);
  row("abort_rate", a.abort_rate);
  row("mean_error_rate", a.mean_error_rate);
  row("confidence_halfwidth_95", a.confidence_halfwidth);
  out << std::string(44, '-') << '\n';
  for (const auto& e : doc.efficiency) {
    out << std::setw(28) << (std::string("efficiency ") + std::string(to_string(e.label)))
        << std::right << std::setw(16) << e.value.to_string() << std::left << '\n';
  }
  return out.str();
}

}  // namespace smqka
