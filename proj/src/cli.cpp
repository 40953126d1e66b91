#include "smqka/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smqka/analysis.hpp"
#include "smqka/report.hpp"
#include "smqka/scenario.hpp"

namespace smqka {

namespace {

namespace fs = std::filesystem;

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// --out wins; otherwise $SMQKA_OUT_DIR/<default_name>; otherwise stdout.
void emit(const std::string& text, const std::string& out_path, const std::string& default_name,
          std::ostream& out) {
  std::string path = out_path;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
      path = (fs::path(dir) / default_name).string();
    }
  }
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FileError("cannot write output file '" + path + "'");
  file << text;
  if (!file) throw FileError("failed writing output file '" + path + "'");
}

std::string efficiency_table(int parties, const Rational& k) {
  const auto smqka = qubit_efficiency(ProtocolLabel::smqka, parties, k);
  const auto liu = qubit_efficiency(ProtocolLabel::liu_mqka, parties, k);
  std::ostringstream out;
  out << std::left << std::setw(10) << "protocol" << std::setw(6) << "N" << std::setw(8) << "k"
      << "efficiency\n";
  for (const auto& e : {smqka, liu}) {
    out << std::setw(10) << to_string(e.label) << std::setw(6) << e.parties << std::setw(8)
        << e.k.to_string() << e.value.to_string() << '\n';
  }
  out << "ratio SMQKA/LiuMQKA = " << (smqka.value / liu.value).to_string() << '\n';
  return out.str();
}

std::string efficiency_records(int parties, const Rational& k) {
  std::ostringstream out;
  for (auto label : {ProtocolLabel::smqka, ProtocolLabel::liu_mqka}) {
    const auto e = qubit_efficiency(label, parties, k);
    nlohmann::json j{{"record", "efficiency"},
                     {"protocol", std::string(to_string(e.label))},
                     {"N", e.parties},
                     {"k", e.k.to_string()},
                     {"value", e.value.to_string()}};
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string oracle_output(const std::string& format) {
  std::ostringstream out;
  if (format == "text") out << std::left << std::setw(8) << "decoy" << std::setw(6) << "tap" << "p_error\n";
  for (auto decoy : {Basis::x, Basis::y}) {
    for (auto tap : {Basis::z, Basis::x, Basis::y}) {
      const double p = detection_probability_oracle(decoy, tap);
      if (format == "text") {
        out << std::setw(8) << to_string(decoy) << std::setw(6) << to_string(tap) << std::fixed
            << std::setprecision(4) << p << '\n';
      } else {
        nlohmann::json j{{"record", "oracle"},
                         {"decoy_basis", std::string(to_string(decoy))},
                         {"tap_basis", std::string(to_string(tap))},
                         {"p_error", p}};
        out << j.dump() << '\n';
      }
    }
  }
  return out.str();
}

std::string sweep_row_header() {
  std::ostringstream out;
  out << std::left << std::setw(6) << "N" << std::setw(8) << "k" << std::setw(10) << "trials"
      << std::setw(13) << "correct" << std::setw(13) << "attack_ok" << std::setw(13) << "abort"
      << "err_rate\n";
  return out.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator for the SMQKA multi-party quantum key agreement protocol and its attacks",
               "smqka"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::string format = "text";
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool fail_on_abort = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "Scenario file (key = value lines)")->required();
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));
    sub->add_option("--threads", threads, "Worker threads for trials")->check(CLI::Range(1u, 256u));
    sub->add_flag("--fail-on-abort", fail_on_abort, "Exit 1 when most trials abort");
  };

  auto* run = app.add_subcommand("run", "Run Monte Carlo trials of one scenario");
  add_common(run);
  auto* run_trials = run->add_option("--trials", trials, "Override the scenario's trial count");
  auto* run_seed = run->add_option("--seed", seed, "Override the scenario's master seed");

  auto* sweep = app.add_subcommand("sweep", "Vary N or k over a range");
  add_common(sweep);
  std::string vary;
  double from = 0, to = 0, step = 1;
  sweep->add_option("--vary", vary, "Parameter to vary")->required()->check(CLI::IsMember({"N", "k"}));
  sweep->add_option("--from", from, "First value")->required();
  sweep->add_option("--to", to, "Last value (inclusive)")->required();
  sweep->add_option("--step", step, "Increment")->check(CLI::PositiveNumber);
  auto* sweep_trials = sweep->add_option("--trials", trials, "Override the scenario's trial count");
  auto* sweep_seed = sweep->add_option("--seed", seed, "Override the scenario's master seed");

  auto* efficiency = app.add_subcommand("efficiency", "Print qubit-efficiency figures");
  int eff_parties = 0;
  std::string eff_k;
  efficiency->add_option("--N", eff_parties, "Number of participants")->required();
  efficiency->add_option("--k", eff_k, "Detection rate (integer, decimal or p/q)")->required();
  efficiency->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));

  auto* oracle = app.add_subcommand("oracle", "Print the per-decoy detection probability table");
  oracle->add_option("--format", format, "text or records")->check(CLI::IsMember({"text", "records"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (run->parsed()) {
      auto config = load_scenario(scenario_path);
      if (run_trials->count()) config.trials = trials;
      if (run_seed->count()) config.seed = seed;
      validate(config);
      auto doc = make_report(config, monte_carlo(config, config.trials, config.seed, threads));
      const bool records = format == "records";
      const auto stem = fs::path(scenario_path).stem().string();
      emit(records ? write_records(doc) : write_summary(doc), out_path,
           stem + (records ? ".jsonl" : ".txt"), out);
      if (fail_on_abort && doc.aggregate.abort_rate > 0.5) return kExitAborted;
      return kExitOk;
    }

    if (sweep->parsed()) {
      auto base = load_scenario(scenario_path);
      if (sweep_trials->count()) base.trials = trials;
      if (sweep_seed->count()) base.seed = seed;
      if (to < from) throw ConfigError("--to", "must be >= --from");
      std::string text = format == "records" ? "" : sweep_row_header();
      bool any_abort_dominated = false;
      const auto points = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
      for (std::size_t i = 0; i < points; ++i) {
        const double value = from + static_cast<double>(i) * step;
        auto config = base;
        if (vary == "N") {
          config.parties = static_cast<int>(std::lround(value));
        } else {
          config.k = value;
        }
        validate(config);
        const auto agg = monte_carlo(config, config.trials, config.seed, threads).aggregate;
        any_abort_dominated = any_abort_dominated || agg.abort_rate > 0.5;
        if (format == "records") {
          nlohmann::json j{{"record", "sweep_point"},
                           {"N", config.parties},
                           {"k", config.k},
                           {"trials", agg.trials},
                           {"correctness_rate", agg.correctness_rate},
                           {"attack_success_rate", agg.attack_success_rate},
                           {"abort_rate", agg.abort_rate},
                           {"mean_error_rate", agg.mean_error_rate},
                           {"confidence_halfwidth", agg.confidence_halfwidth}};
          text += j.dump() + "\n";
        } else {
          std::ostringstream row;
          row << std::left << std::fixed << std::setprecision(4) << std::setw(6) << config.parties
              << std::setw(8) << config.k << std::setw(10) << agg.trials << std::setw(13)
              << agg.correctness_rate << std::setw(13) << agg.attack_success_rate << std::setw(13)
              << agg.abort_rate << agg.mean_error_rate << '\n';
          text += row.str();
        }
      }
      const auto stem = fs::path(scenario_path).stem().string();
      emit(text, out_path, stem + (format == "records" ? ".sweep.jsonl" : ".sweep.txt"), out);
      if (fail_on_abort && any_abort_dominated) return kExitAborted;
      return kExitOk;
    }

    if (efficiency->parsed()) {
      Rational k;
      try {
        k = Rational::parse(eff_k);
      } catch (const std::exception& e) {
        throw ConfigError("--k", e.what());
      }
      out << (format == "records" ? efficiency_records(eff_parties, k)
                                  : efficiency_table(eff_parties, k));
      return kExitOk;
    }

    if (oracle->parsed()) {
      out << oracle_output(format);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace smqka
