#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "smqka/analysis.hpp"
#include "smqka/scenario.hpp"

namespace smqka {

inline constexpr std::string_view kReportSchema = "smqka-report";
inline constexpr int kReportSchemaVersion = 1;

struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  ScenarioConfig config;
  std::vector<TrialOutcome> trials;
  TrialAggregate aggregate;
  std::vector<EfficiencyFigure> efficiency;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

// Both protocols' efficiency at the config's N and k, with k taken exactly
// as kn/n.
ReportDocument make_report(const ScenarioConfig& config, MonteCarloResult result);

// Line-delimited JSON: a header record carrying the config, one record per
// trial in index order, one aggregate record and one record per efficiency
// figure. Output depends only on the document.
std::string write_records(const ReportDocument& doc);
// Inverse of write_records; throws std::runtime_error on malformed input
// or a schema mismatch.
ReportDocument read_records(std::string_view text);

// Fixed-width human summary.
std::string write_summary(const ReportDocument& doc);

}  // namespace smqka
