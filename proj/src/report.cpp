#include "iotcarbon/report.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "iotcarbon/schema_io.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

namespace {

using nlohmann::json;

constexpr std::string_view kOperationalLabel = "Operational";

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

struct TableRow {
  std::vector<std::string> cells;
};

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<TableRow>& rows,
                         const std::vector<bool>& numeric) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.cells.size(); ++i)
      width[i] = std::max(width[i], r.cells[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += "  ";
      out += pad(cells[i], width[i], numeric[i]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
  for (const auto& r : rows) out += line(r.cells);
  return out;
}

}  // namespace

std::vector<double> FootprintReport::shares_pct() const {
  std::vector<double> out;
  for (const auto& row : embodied.rows)
    out.push_back(total_kg > 0.0 ? 100.0 * row.amortized_kg / total_kg : 0.0);
  out.push_back(total_kg > 0.0 ? 100.0 * operational.kg / total_kg : 0.0);
  return out;
}

FootprintReport full_report(const Case& c, const ModelBundle* bundle,
                            Diagnostics* diag) {
  auto usage_problems = validate_usage(c.usage, c.device.lifetime_years);
  if (!usage_problems.empty()) throw ValidationError(usage_problems);

  FootprintReport r;
  r.device = c.device.name;
  r.operational.unit = c.unit;
  r.operational.region = c.usage.region;
  r.operational.ci_kg_per_kwh = lookup_ci(c.pack.ci, c.usage.region);
  r.operational.inferences = inference_count(c.usage);
  if (c.network) {
    if (!bundle) throw Error("operational estimate needs a model bundle");
    r.operational.network = c.network->name;
    r.operational.energy_per_inference_j =
        predict_network(*bundle, *c.network, c.unit, diag).total_j;
    r.operational.kg = lifetime_operational(r.operational.energy_per_inference_j,
                                            c.usage, c.pack.ci);
  }
  r.embodied = embodied_total(c.device, c.usage.active_years, c.pack);
  r.total_kg = r.operational.kg;
  for (const auto& row : r.embodied.rows) r.total_kg += row.amortized_kg;
  return r;
}

void check_reconciliation(const FootprintReport& r) {
  double sum = r.operational.kg, scale = std::abs(r.operational.kg);
  double embodied = 0.0;
  for (const auto& row : r.embodied.rows) {
    sum += row.amortized_kg;
    embodied += row.amortized_kg;
    scale += std::abs(row.amortized_kg);
  }
  double n = static_cast<double>(r.embodied.rows.size() + 2);
  double tol = n * std::numeric_limits<double>::epsilon() * scale;
  if (std::abs(sum - r.total_kg) > tol)
    throw Error("report does not reconcile: rows sum to " + format_number(sum) +
                " kg but total is " + format_number(r.total_kg) + " kg");
  if (std::abs(embodied - r.embodied.total_kg) > tol)
    throw Error("embodied rows sum to " + format_number(embodied) +
                " kg but embodied total is " +
                format_number(r.embodied.total_kg) + " kg");
  if (r.total_kg > 0.0) {
    auto shares = r.shares_pct();
    double pct = std::accumulate(shares.begin(), shares.end(), 0.0);
    if (std::abs(pct - 100.0) > 0.01)
      throw Error("report shares add to " + format_number(pct) + "%, not 100%");
  }
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "table") return ReportFormat::kTable;
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  throw ParseError("unknown format '" + std::string(text) +
                   "' (expected table, json or csv)");
}

json to_json(const FootprintReport& r) {
  json rows = json::array();
  for (const auto& row : r.embodied.rows)
    rows.push_back({{"label", row.label},
                    {"kind", row.kind},
                    {"subkind", row.subkind},
                    {"formula", to_string(row.formula)},
                    {"raw_kg", row.raw_kg},
                    {"amortized_kg", row.amortized_kg}});
  const auto& op = r.operational;
  return {{"schema_version", kSchemaVersion},
          {"kind", "footprint-report"},
          {"device", r.device},
          {"lineage", r.lineage},
          {"operational",
           {{"network", op.network},
            {"unit", to_string(op.unit.kind)},
            {"soc", op.unit.soc},
            {"energy_per_inference_j", op.energy_per_inference_j},
            {"inferences", op.inferences},
            {"region", op.region},
            {"ci_kg_per_kwh", op.ci_kg_per_kwh},
            {"kg", op.kg}}},
          {"embodied",
           {{"usage_years", r.embodied.usage_years},
            {"lifetime_years", r.embodied.lifetime_years},
            {"rows", rows},
            {"total_kg", r.embodied.total_kg},
            {"warnings", r.embodied.warnings}}},
          {"total_kg", r.total_kg},
          {"shares_pct", r.shares_pct()}};
}

FootprintReport report_from_json(const json& doc) {
  check_header(doc, "footprint-report");
  FootprintReport r;
  try {
    r.device = doc.at("device").get<std::string>();
    r.lineage = doc.at("lineage").get<std::vector<std::string>>();
    const auto& op = doc.at("operational");
    r.operational.network = op.at("network").get<std::string>();
    r.operational.unit.kind = parse_unit_kind(op.at("unit").get<std::string>());
    r.operational.unit.soc = op.at("soc").get<std::string>();
    r.operational.energy_per_inference_j =
        op.at("energy_per_inference_j").get<double>();
    r.operational.inferences = op.at("inferences").get<double>();
    r.operational.region = op.at("region").get<std::string>();
    r.operational.ci_kg_per_kwh = op.at("ci_kg_per_kwh").get<double>();
    r.operational.kg = op.at("kg").get<double>();
    const auto& emb = doc.at("embodied");
    r.embodied.device = r.device;
    r.embodied.usage_years = emb.at("usage_years").get<double>();
    r.embodied.lifetime_years = emb.at("lifetime_years").get<double>();
    for (const auto& row : emb.at("rows")) {
      ComponentFootprint f;
      f.label = row.at("label").get<std::string>();
      f.kind = row.at("kind").get<std::string>();
      f.subkind = row.at("subkind").get<std::string>();
      f.formula = parse_formula(row.at("formula").get<std::string>());
      f.raw_kg = row.at("raw_kg").get<double>();
      f.amortized_kg = row.at("amortized_kg").get<double>();
      r.embodied.rows.push_back(std::move(f));
    }
    r.embodied.total_kg = emb.at("total_kg").get<double>();
    r.embodied.warnings = emb.at("warnings").get<std::vector<std::string>>();
    r.total_kg = doc.at("total_kg").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("footprint report: ") + e.what());
  }
  check_reconciliation(r);
  return r;
}

std::string render_report(const FootprintReport& r, ReportFormat format) {
  check_reconciliation(r);
  auto shares = r.shares_pct();
  const auto& op = r.operational;
  std::string op_subkind =
      op.network.empty() ? op.region
                         : op.network + " on " + std::string(to_string(op.unit.kind)) +
                               ", " + op.region;
  switch (format) {
    case ReportFormat::kJson:
      return to_json(r).dump(2) + "\n";
    case ReportFormat::kCsv: {
      std::ostringstream out;
      out << kReportCsvHeader << '\n';
      for (std::size_t i = 0; i < r.embodied.rows.size(); ++i) {
        const auto& row = r.embodied.rows[i];
        out << csv_escape(row.label) << ',' << csv_escape(row.subkind) << ','
            << to_string(row.formula) << ',' << format_number(row.raw_kg) << ','
            << format_number(row.amortized_kg) << ','
            << format_number(shares[i]) << '\n';
      }
      out << kOperationalLabel << ',' << csv_escape(op_subkind) << ",CI,"
          << format_number(op.kg) << ',' << format_number(op.kg) << ','
          << format_number(shares.back()) << '\n';
      return out.str();
    }
    case ReportFormat::kTable: {
      struct Item {
        std::string label, subkind, formula;
        double kg, share;
      };
      std::vector<Item> items;
      for (std::size_t i = 0; i < r.embodied.rows.size(); ++i) {
        const auto& row = r.embodied.rows[i];
        items.push_back({row.label, row.subkind, std::string(to_string(row.formula)),
                         row.amortized_kg, shares[i]});
      }
      items.push_back({std::string(kOperationalLabel), op_subkind, "CI", op.kg,
                       shares.back()});
      std::stable_sort(items.begin(), items.end(),
                       [](const Item& a, const Item& b) { return a.kg > b.kg; });
      std::vector<TableRow> rows;
      for (const auto& it : items)
        rows.push_back({{it.label, it.subkind, it.formula, format_fixed(it.kg, 3),
                         format_fixed(it.share, 1)}});
      rows.push_back({{"Total", "", "", format_fixed(r.total_kg, 3),
                       r.total_kg > 0.0 ? "100.0" : "0.0"}});
      std::string out = "Device: " + r.device;
      if (!r.lineage.empty()) {
        out += " [";
        for (std::size_t i = 0; i < r.lineage.size(); ++i)
          out += (i ? " -> " : "") + r.lineage[i];
        out += "]";
      }
      out += "\n";
      return out + render_table({"component", "subkind", "formula", "kgCO2-eq", "share %"},
                                rows, {false, false, false, true, true});
    }
  }
  return {};
}

std::vector<WhatIfRow> what_if(const Case& base,
                               const std::vector<Scenario>& scenarios,
                               const ModelBundle* bundle, Diagnostics* diag) {
  std::vector<WhatIfRow> out;
  auto row_of = [&](const std::string& name, const FootprintReport& r) {
    WhatIfRow w;
    w.scenario = name;
    w.operational_kg = r.operational.kg;
    w.embodied_kg = r.embodied.total_kg;
    w.total_kg = r.total_kg;
    return w;
  };
  auto baseline = full_report(base, bundle, diag);
  out.push_back(row_of("baseline", baseline));
  for (const auto& s : scenarios) {
    auto r = full_report(apply_scenario(base, s), bundle, diag);
    auto w = row_of(s.name, r);
    w.delta_kg = w.total_kg - baseline.total_kg;
    w.delta_pct =
        baseline.total_kg > 0.0 ? 100.0 * w.delta_kg / baseline.total_kg : 0.0;
    out.push_back(w);
  }
  return out;
}

std::string render_what_if(const std::vector<WhatIfRow>& rows,
                           ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: {
      json arr = json::array();
      for (const auto& w : rows)
        arr.push_back({{"scenario", w.scenario},
                       {"operational_kg", w.operational_kg},
                       {"embodied_kg", w.embodied_kg},
                       {"total_kg", w.total_kg},
                       {"delta_kg", w.delta_kg},
                       {"delta_pct", w.delta_pct}});
      json doc = {{"schema_version", kSchemaVersion},
                  {"kind", "what-if"},
                  {"rows", arr}};
      return doc.dump(2) + "\n";
    }
    case ReportFormat::kCsv: {
      std::string out =
          "scenario,operational_kg,embodied_kg,total_kg,delta_kg,delta_pct\n";
      for (const auto& w : rows)
        out += csv_escape(w.scenario) + ',' + format_number(w.operational_kg) +
               ',' + format_number(w.embodied_kg) + ',' +
               format_number(w.total_kg) + ',' + format_number(w.delta_kg) +
               ',' + format_number(w.delta_pct) + '\n';
      return out;
    }
    case ReportFormat::kTable: {
      std::vector<TableRow> t;
      for (const auto& w : rows)
        t.push_back({{w.scenario, format_fixed(w.operational_kg, 3),
                      format_fixed(w.embodied_kg, 3), format_fixed(w.total_kg, 3),
                      format_fixed(w.delta_kg, 3), format_fixed(w.delta_pct, 1)}});
      return render_table(
          {"scenario", "operational", "embodied", "total", "delta kg", "delta %"},
          t, {false, true, true, true, true, true});
    }
  }
  return {};
}

}  // namespace iotcarbon
