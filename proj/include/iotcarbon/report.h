#pragma once

// End-to-end footprint: lifetime operational carbon of the case's network
// plus the device's amortized embodied carbon.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iotcarbon/embodied.h"
#include "iotcarbon/energy_predictor.h"
#include "iotcarbon/scenario.h"

namespace iotcarbon {

struct OperationalPart {
  std::string network;  // empty when the case has no network
  ExecutionUnit unit;
  double energy_per_inference_j = 0.0;
  double inferences = 0.0;
  std::string region;
  double ci_kg_per_kwh = 0.0;
  double kg = 0.0;

  friend bool operator==(const OperationalPart&, const OperationalPart&) =
      default;
};

struct FootprintReport {
  std::string device;
  std::vector<std::string> lineage;  // scenario names applied, in order
  OperationalPart operational;
  EmbodiedReport embodied;
  double total_kg = 0.0;

  /// Percent of total_kg per embodied row, then the operational share last.
  /// All zero when the total is zero.
  std::vector<double> shares_pct() const;

  friend bool operator==(const FootprintReport&, const FootprintReport&) =
      default;
};

/// Operational carbon needs a network and a bundle; without a network the
/// operational part is zero. Embodied rows are amortized over
/// usage.active_years.
FootprintReport full_report(const Case& c, const ModelBundle* bundle,
                            Diagnostics* diag = nullptr);

/// Throws Error when the total does not match operational + rows or the
/// shares do not add to 100%.
void check_reconciliation(const FootprintReport& report);

enum class ReportFormat { kTable, kJson, kCsv };

ReportFormat parse_report_format(std::string_view text);

/// Columns of the delimited format.
inline constexpr std::string_view kReportCsvHeader =
    "component,subkind,formula,raw_kg,amortized_kg,share_pct";

/// Reconciles, then renders. The table lists rows by descending kg followed
/// by the total.
std::string render_report(const FootprintReport& report, ReportFormat format);

nlohmann::json to_json(const FootprintReport& report);
FootprintReport report_from_json(const nlohmann::json& doc);

struct WhatIfRow {
  std::string scenario;
  double operational_kg = 0.0;
  double embodied_kg = 0.0;
  double total_kg = 0.0;
  double delta_kg = 0.0;   // vs baseline
  double delta_pct = 0.0;  // vs baseline total
};

/// Baseline first, then one row per scenario in order.
std::vector<WhatIfRow> what_if(const Case& base,
                               const std::vector<Scenario>& scenarios,
                               const ModelBundle* bundle,
                               Diagnostics* diag = nullptr);

std::string render_what_if(const std::vector<WhatIfRow>& rows,
                           ReportFormat format);

}  // namespace iotcarbon
