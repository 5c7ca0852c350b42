#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iotcarbon/core.h"

namespace iotcarbon {

/// Logic carbon-per-area by process node, built from a pack's cpa_logic
/// section. Node labels look like "22nm". Unlisted nodes inside the table's
/// range interpolate log-linearly (log CPA against log nm) between the two
/// neighbouring entries.
class NodeTable {
 public:
  struct Lookup {
    double cpa = 0.0;
    bool interpolated = false;
  };

  NodeTable() = default;
  static NodeTable from_pack(const FactorPack& pack);

  /// Throws LookupError for an unparseable label or a node outside the table.
  Lookup lookup(std::string_view node) const;

  /// Neighbouring entries whose CPA rises with node size.
  std::vector<std::string> monotonicity_warnings() const;

  bool empty() const { return points_.empty(); }

  static std::optional<double> parse_nm(std::string_view label);

 private:
  struct Point {
    double nm;
    double cpa;
    std::string label;
  };
  std::vector<Point> points_;  // ascending nm
};

enum class Formula { kCpa, kCpc, kCpm, kCpd, kFixed };

std::string_view to_string(Formula formula);
Formula parse_formula(std::string_view text);

/// CPA(node) x area.
double logic_carbon(double area_cm2, std::string_view node,
                    const NodeTable& table, Diagnostics* diag = nullptr);
/// CPC(kind) x capacity. Only DRAM and Flash are memory kinds.
double memory_carbon(ComputingKind kind, double capacity_gb,
                     const FactorPack& pack);
/// CPM(subkind) x mass.
double mass_carbon(std::string_view subkind, double mass_g,
                   const FactorPack& pack);
/// Area-based non-logic parts (PCB, analog sensors): CPA(subkind) x area.
double area_carbon(std::string_view subkind, double area_cm2,
                   const FactorPack& pack);
double fixed_item_carbon(std::string_view item, double count,
                         const FactorPack& pack);
/// CPD(mode) x mass x distance.
double transport_carbon(std::string_view mode, double mass_g,
                        double distance_km, const FactorPack& pack);

struct ComponentFootprint {
  std::string label;    // report row: SoC, Casing, Battery, ...
  std::string kind;     // component kind, or "Transport"
  std::string subkind;  // node, material, item, or transport mode
  Formula formula = Formula::kCpm;
  double raw_kg = 0.0;
  double amortized_kg = 0.0;

  friend bool operator==(const ComponentFootprint&,
                         const ComponentFootprint&) = default;
};

/// One summand of the device total. `amortization` is
/// time_share x usage_years / lifetime, applied by the caller's convention;
/// the component's own time_share is folded in here.
ComponentFootprint component_carbon(const ComputingComponent& component,
                                    const FactorPack& pack,
                                    const NodeTable& table,
                                    double usage_over_lifetime = 1.0,
                                    Diagnostics* diag = nullptr);
ComponentFootprint component_carbon(const NonComputingComponent& component,
                                    const FactorPack& pack,
                                    double usage_over_lifetime = 1.0);

struct EmbodiedReport {
  std::string device;
  double usage_years = 0.0;
  double lifetime_years = 0.0;
  std::vector<ComponentFootprint> rows;  // component order, then transport
  double total_kg = 0.0;
  std::vector<std::string> warnings;

  /// Amortized kg summed per row label, first-appearance order.
  std::vector<std::pair<std::string, double>> by_label() const;
  double label_total(std::string_view label) const;

  friend bool operator==(const EmbodiedReport&, const EmbodiedReport&) =
      default;
};

/// Amortized device total. `usage_years` defaults to the device lifetime
/// (full attribution). Throws ValidationError when validate_device fails.
EmbodiedReport embodied_total(const DeviceDescription& device,
                              std::optional<double> usage_years,
                              const FactorPack& pack);

/// Columns: component,subkind,formula,raw_kg,amortized_kg
inline constexpr std::string_view kEmbodiedCsvHeader =
    "component,subkind,formula,raw_kg,amortized_kg";
std::string render_embodied_csv(const EmbodiedReport& report);

}  // namespace iotcarbon
