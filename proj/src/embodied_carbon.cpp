#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "iotcarbon/embodied.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

namespace {

const Factor& require_factor(const FactorMap& map, std::string_view key,
                             std::string_view section) {
  auto it = map.find(key);
  if (it == map.end())
    throw LookupError("no " + std::string(section) + " entry '" +
                      std::string(key) + "' in factor pack");
  return it->second;
}

void require_non_negative(double value, std::string_view what) {
  if (!(value >= 0.0))
    throw Error(std::string(what) + " must be non-negative, got " +
                format_number(value));
}

}  // namespace

// ---------------------------------------------------------------------------
// NodeTable

std::optional<double> NodeTable::parse_nm(std::string_view label) {
  if (label.size() < 3 || label.substr(label.size() - 2) != "nm")
    return std::nullopt;
  auto digits = label.substr(0, label.size() - 2);
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() ||
      !(value > 0.0))
    return std::nullopt;
  return value;
}

NodeTable NodeTable::from_pack(const FactorPack& pack) {
  NodeTable table;
  for (const auto& [label, factor] : pack.cpa_logic) {
    auto nm = parse_nm(label);
    if (!nm)
      throw ParseError("cpa_logic node label '" + label +
                       "' is not of the form <number>nm");
    table.points_.push_back({*nm, factor.value, label});
  }
  std::sort(table.points_.begin(), table.points_.end(),
            [](const Point& a, const Point& b) { return a.nm < b.nm; });
  for (std::size_t i = 1; i < table.points_.size(); ++i)
    if (table.points_[i].nm == table.points_[i - 1].nm)
      throw ParseError("cpa_logic lists node " + table.points_[i].label +
                       " twice");
  return table;
}

NodeTable::Lookup NodeTable::lookup(std::string_view node) const {
  auto nm = parse_nm(node);
  if (!nm)
    throw LookupError("process node '" + std::string(node) +
                      "' is not of the form <number>nm");
  for (const auto& point : points_)
    if (point.nm == *nm) return {point.cpa, false};
  if (points_.size() < 2 || *nm < points_.front().nm ||
      *nm > points_.back().nm)
    throw LookupError("process node '" + std::string(node) +
                      "' is outside the node table's interpolation range");
  auto upper = std::find_if(points_.begin(), points_.end(),
                            [&](const Point& p) { return p.nm > *nm; });
  auto lower = upper - 1;
  // Log-linear in both axes; zero CPA endpoints fall back to linear.
  double t = (std::log(*nm) - std::log(lower->nm)) /
             (std::log(upper->nm) - std::log(lower->nm));
  double cpa;
  if (lower->cpa > 0.0 && upper->cpa > 0.0)
    cpa = std::exp(std::log(lower->cpa) +
                   t * (std::log(upper->cpa) - std::log(lower->cpa)));
  else
    cpa = lower->cpa + t * (upper->cpa - lower->cpa);
  return {cpa, true};
}

std::vector<std::string> NodeTable::monotonicity_warnings() const {
  std::vector<std::string> warnings;
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (points_[i].cpa > points_[i - 1].cpa)
      warnings.push_back("node table not monotone: " + points_[i].label +
                         " CPA " + format_number(points_[i].cpa) + " > " +
                         points_[i - 1].label + " CPA " +
                         format_number(points_[i - 1].cpa));
  return warnings;
}

// ---------------------------------------------------------------------------
// Formula operations

std::string_view to_string(Formula formula) {
  switch (formula) {
    case Formula::kCpa:
      return "CPA";
    case Formula::kCpc:
      return "CPC";
    case Formula::kCpm:
      return "CPM";
    case Formula::kCpd:
      return "CPD";
    case Formula::kFixed:
      return "fixed";
  }
  return "?";
}

Formula parse_formula(std::string_view text) {
  for (auto f : {Formula::kCpa, Formula::kCpc, Formula::kCpm, Formula::kCpd,
                 Formula::kFixed})
    if (to_string(f) == text) return f;
  throw ParseError("unknown formula '" + std::string(text) + "'");
}

double logic_carbon(double area_cm2, std::string_view node,
                    const NodeTable& table, Diagnostics* diag) {
  require_non_negative(area_cm2, "area");
  auto found = table.lookup(node);
  if (found.interpolated && diag)
    diag->warn("node " + std::string(node) + " interpolated: CPA " +
               format_number(found.cpa));
  return found.cpa * area_cm2;
}

double memory_carbon(ComputingKind kind, double capacity_gb,
                     const FactorPack& pack) {
  if (is_logic(kind))
    throw LookupError(std::string(to_string(kind)) +
                      " is not a memory kind");
  require_non_negative(capacity_gb, "capacity");
  return require_factor(pack.cpc, to_string(kind), "CPC").value * capacity_gb;
}

double mass_carbon(std::string_view subkind, double mass_g,
                   const FactorPack& pack) {
  require_non_negative(mass_g, "mass");
  return require_factor(pack.cpm, subkind, "CPM").value * mass_g;
}

double area_carbon(std::string_view subkind, double area_cm2,
                   const FactorPack& pack) {
  require_non_negative(area_cm2, "area");
  return require_factor(pack.cpa_other, subkind, "CPA").value * area_cm2;
}

double fixed_item_carbon(std::string_view item, double count,
                         const FactorPack& pack) {
  require_non_negative(count, "count");
  return require_factor(pack.fixed, item, "fixed-item").value * count;
}

double transport_carbon(std::string_view mode, double mass_g,
                        double distance_km, const FactorPack& pack) {
  require_non_negative(mass_g, "mass");
  require_non_negative(distance_km, "distance");
  return require_factor(pack.cpd, mode, "CPD").value * mass_g * distance_km;
}

ComponentFootprint component_carbon(const ComputingComponent& component,
                                    const FactorPack& pack,
                                    const NodeTable& table,
                                    double usage_over_lifetime,
                                    Diagnostics* diag) {
  ComponentFootprint out;
  out.label = row_label(component);
  out.kind = std::string(to_string(component.kind));
  if (is_logic(component.kind)) {
    if (!component.area_cm2 || !component.node)
      throw Error(out.kind + " needs an area and a process node");
    out.subkind = *component.node;
    out.formula = Formula::kCpa;
    out.raw_kg = logic_carbon(*component.area_cm2, *component.node, table, diag);
  } else {
    if (!component.capacity_gb)
      throw Error(out.kind + " needs a capacity");
    out.subkind = out.kind;
    out.formula = Formula::kCpc;
    out.raw_kg = memory_carbon(component.kind, *component.capacity_gb, pack);
  }
  out.amortized_kg = out.raw_kg * (component.time_share * usage_over_lifetime);
  return out;
}

ComponentFootprint component_carbon(const NonComputingComponent& component,
                                    const FactorPack& pack,
                                    double usage_over_lifetime) {
  ComponentFootprint out;
  out.label = row_label(component);
  out.kind = std::string(to_string(component.kind));
  out.subkind = component.subkind;
  auto ref = resolve_subkind(pack, component.subkind);
  if (!ref)
    throw LookupError("subkind '" + component.subkind +
                      "' does not resolve to exactly one factor entry");
  if (ref->basis != component.quantity.basis)
    throw Error("subkind '" + component.subkind + "' needs a " +
                std::string(to_string(ref->basis)) + " quantity, got " +
                std::string(to_string(component.quantity.basis)));
  double q = component.quantity.value;
  switch (ref->basis) {
    case QuantityBasis::kMass:
      out.formula = Formula::kCpm;
      out.raw_kg = mass_carbon(component.subkind, q, pack);
      break;
    case QuantityBasis::kArea:
      out.formula = Formula::kCpa;
      out.raw_kg = area_carbon(component.subkind, q, pack);
      break;
    case QuantityBasis::kCount:
      out.formula = Formula::kFixed;
      out.raw_kg = fixed_item_carbon(component.subkind, q, pack);
      break;
  }
  out.amortized_kg = out.raw_kg * (component.time_share * usage_over_lifetime);
  return out;
}

// ---------------------------------------------------------------------------
// Device total

std::vector<std::pair<std::string, double>> EmbodiedReport::by_label() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == row.label; });
    if (it == out.end())
      out.emplace_back(row.label, row.amortized_kg);
    else
      it->second += row.amortized_kg;
  }
  return out;
}

double EmbodiedReport::label_total(std::string_view label) const {
  double sum = 0.0;
  for (const auto& row : rows)
    if (row.label == label) sum += row.amortized_kg;
  return sum;
}

EmbodiedReport embodied_total(const DeviceDescription& device,
                              std::optional<double> usage_years,
                              const FactorPack& pack) {
  auto validation = validate_device(device, pack);
  if (!validation.ok()) throw ValidationError(validation.violations);
  double usage = usage_years.value_or(device.lifetime_years);
  if (!(usage >= 0.0))
    throw Error("usage years must be non-negative, got " +
                format_number(usage));

  EmbodiedReport report;
  report.device = device.name;
  report.usage_years = usage;
  report.lifetime_years = device.lifetime_years;
  report.warnings = validation.warnings;

  Diagnostics diag;
  auto table = NodeTable::from_pack(pack);
  double ratio = usage / device.lifetime_years;
  for (const auto& component : device.computing)
    report.rows.push_back(
        component_carbon(component, pack, table, ratio, &diag));
  for (const auto& component : device.non_computing)
    report.rows.push_back(component_carbon(component, pack, ratio));
  for (const auto& leg : device.transport) {
    ComponentFootprint row;
    row.label = "Transport";
    row.kind = "Transport";
    row.subkind = leg.mode;
    row.formula = Formula::kCpd;
    row.raw_kg = transport_carbon(leg.mode, leg.mass_g, leg.distance_km, pack);
    row.amortized_kg = row.raw_kg * ratio;
    report.rows.push_back(std::move(row));
  }
  for (const auto& row : report.rows) report.total_kg += row.amortized_kg;
  for (auto& w : diag.warnings) report.warnings.push_back(std::move(w));
  return report;
}

std::string render_embodied_csv(const EmbodiedReport& report) {
  std::ostringstream out;
  out << kEmbodiedCsvHeader << '\n';
  for (const auto& row : report.rows)
    out << csv_escape(row.label) << ',' << csv_escape(row.subkind) << ','
        << to_string(row.formula) << ',' << format_number(row.raw_kg) << ','
        << format_number(row.amortized_kg) << '\n';
  return out.str();
}

}  // namespace iotcarbon
