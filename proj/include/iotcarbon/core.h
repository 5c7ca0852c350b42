#pragma once

// Domain types shared by every module. Canonical units throughout:
// energy J, mass g, area cm^2, capacity GB, distance km, carbon kgCO2-eq,
// carbon intensity kgCO2-eq/kWh, durations in years.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iotcarbon/error.h"

namespace iotcarbon {

// ---------------------------------------------------------------------------
// Kernels

/// The eight fused-kernel classes measured on mobile SoCs.
enum class KernelType {
  kConvBnRelu,
  kDwConvBnRelu,
  kBnRelu,
  kRelu,
  kPool,
  kFc,
  kConcat,
  kOthers,
};

inline constexpr std::array<KernelType, 8> kAllKernelTypes = {
    KernelType::kConvBnRelu, KernelType::kDwConvBnRelu, KernelType::kBnRelu,
    KernelType::kRelu,       KernelType::kPool,         KernelType::kFc,
    KernelType::kConcat,     KernelType::kOthers,
};

std::string_view to_string(KernelType type);
/// Exact tag match ("conv+bn+relu", "avg/max pool", ...); throws ParseError.
KernelType parse_kernel_type(std::string_view tag);
/// Filesystem-friendly name, e.g. "conv_bn_relu".
std::string_view file_stem(KernelType type);

enum class ConfigField {
  kHw,
  kCi,
  kCo,
  kKs,
  kS,
  kBw,
  kCi1,
  kCi2,
  kCi3,
  kCi4,
};

inline constexpr std::size_t kNumConfigFields = 10;

std::string_view to_string(ConfigField field);
std::optional<ConfigField> parse_config_field(std::string_view name);

/// The configuration columns a kernel type carries, in canonical order.
std::span<const ConfigField> config_fields(KernelType type);

/// Sparse configuration tuple. Absent fields are std::nullopt.
class KernelConfig {
 public:
  KernelConfig() = default;

  std::optional<int> get(ConfigField field) const {
    return values_[static_cast<std::size_t>(field)];
  }
  KernelConfig& set(ConfigField field, std::optional<int> value) {
    values_[static_cast<std::size_t>(field)] = value;
    return *this;
  }
  bool has(ConfigField field) const { return get(field).has_value(); }

  std::optional<int> hw() const { return get(ConfigField::kHw); }
  std::optional<int> c_i() const { return get(ConfigField::kCi); }
  std::optional<int> c_o() const { return get(ConfigField::kCo); }
  std::optional<int> ks() const { return get(ConfigField::kKs); }
  std::optional<int> s() const { return get(ConfigField::kS); }
  int bw() const { return get(ConfigField::kBw).value_or(32); }

  /// Integer value of a field that must be present; throws Error otherwise.
  int require(ConfigField field) const;

  friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
  friend auto operator<=>(const KernelConfig&, const KernelConfig&) = default;

 private:
  std::array<std::optional<int>, kNumConfigFields> values_{};
};

/// Builds a config from positional values in config_fields(type) order.
KernelConfig make_config(KernelType type, std::initializer_list<int> values);

std::string describe(KernelType type, const KernelConfig& config);

struct Kernel {
  KernelType type = KernelType::kOthers;
  KernelConfig config;

  friend bool operator==(const Kernel&, const Kernel&) = default;
};

// ---------------------------------------------------------------------------
// Execution units and the SoC registry

enum class UnitKind { kCpu, kGpu, kNpu };

std::string_view to_string(UnitKind kind);
/// Case-insensitive "cpu" / "gpu" / "npu".
UnitKind parse_unit_kind(std::string_view text);

struct ExecutionUnit {
  UnitKind kind = UnitKind::kGpu;
  std::string soc = "snapdragon-8-gen3";

  friend bool operator==(const ExecutionUnit&, const ExecutionUnit&) = default;
  friend auto operator<=>(const ExecutionUnit&, const ExecutionUnit&) = default;
};

std::string describe(const ExecutionUnit& unit);

struct SocSpec {
  std::string id;
  std::string display_name;
  std::vector<std::string> cpu_cores;
  std::string gpu;
  std::string npu;
};

/// The two evaluated SoCs.
const std::vector<SocSpec>& soc_registry();
const SocSpec* find_soc(std::string_view id);

/// NPUs run INT4/8/16; CPU and GPU run 32-bit floating point.
bool bitwidth_allowed(UnitKind kind, int bw);

// ---------------------------------------------------------------------------
// Networks

struct NetworkMetadata {
  std::optional<double> declared_flops;
  std::map<std::string, double> top1_accuracy;  // inert, carried through
  std::string notes;

  friend bool operator==(const NetworkMetadata&, const NetworkMetadata&) =
      default;
};

struct NetworkDescription {
  std::string name;
  std::vector<Kernel> kernels;
  NetworkMetadata metadata;

  friend bool operator==(const NetworkDescription&,
                         const NetworkDescription&) = default;
};

// ---------------------------------------------------------------------------
// Devices

enum class ComputingKind { kSoC, kChipset, kDram, kFlash };

std::string_view to_string(ComputingKind kind);
ComputingKind parse_computing_kind(std::string_view text);
inline bool is_logic(ComputingKind kind) {
  return kind == ComputingKind::kSoC || kind == ComputingKind::kChipset;
}

struct ComputingComponent {
  ComputingKind kind = ComputingKind::kSoC;
  std::string label;  // report row; defaults to the kind name
  std::optional<double> area_cm2;
  std::optional<std::string> node;
  std::optional<double> capacity_gb;
  double time_share = 1.0;
  std::string note;

  friend bool operator==(const ComputingComponent&,
                         const ComputingComponent&) = default;
};

enum class NonComputingKind {
  kActuator,
  kCasing,
  kConnectivity,
  kPcb,
  kPowerSupply,
  kSensing,
  kUi,
  kOthers,
};

std::string_view to_string(NonComputingKind kind);
NonComputingKind parse_non_computing_kind(std::string_view text);

enum class QuantityBasis { kMass, kArea, kCount };

std::string_view to_string(QuantityBasis basis);

struct Quantity {
  QuantityBasis basis = QuantityBasis::kMass;
  double value = 0.0;  // g, cm^2, or items

  friend bool operator==(const Quantity&, const Quantity&) = default;
};

struct NonComputingComponent {
  NonComputingKind kind = NonComputingKind::kOthers;
  std::string subkind;
  Quantity quantity;
  std::string label;
  double time_share = 1.0;
  std::string note;

  friend bool operator==(const NonComputingComponent&,
                         const NonComputingComponent&) = default;
};

struct TransportLeg {
  std::string mode;
  double mass_g = 0.0;
  double distance_km = 0.0;

  friend bool operator==(const TransportLeg&, const TransportLeg&) = default;
};

struct DeviceDescription {
  std::string name;
  std::vector<ComputingComponent> computing;
  std::vector<NonComputingComponent> non_computing;
  double lifetime_years = 3.0;
  std::vector<TransportLeg> transport;
  std::string notes;

  friend bool operator==(const DeviceDescription&,
                         const DeviceDescription&) = default;
};

/// Report label of a component: explicit label or the kind name.
std::string row_label(const ComputingComponent& component);
std::string row_label(const NonComputingComponent& component);

// ---------------------------------------------------------------------------
// Factor pack

enum class Provenance { kPaperText, kTableCalibrated, kUser };

std::string_view to_string(Provenance provenance);
Provenance parse_provenance(std::string_view text);

struct Factor {
  double value = 0.0;
  Provenance provenance = Provenance::kUser;
  std::string note;

  friend bool operator==(const Factor&, const Factor&) = default;
};

using FactorMap = std::map<std::string, Factor, std::less<>>;

/// Every carbon factor the estimator uses, with per-entry provenance.
struct FactorPack {
  std::string name;
  FactorMap ci;         // region -> kgCO2-eq/kWh
  FactorMap cpa_logic;  // process node -> kgCO2-eq/cm^2
  FactorMap cpc;        // "DRAM" / "Flash" -> kgCO2-eq/GB
  FactorMap cpm;        // material -> kgCO2-eq/g
  FactorMap cpd;        // transport mode -> kgCO2-eq/g/km
  FactorMap fixed;      // item -> kgCO2-eq each
  FactorMap cpa_other;  // PCB / sensor class -> kgCO2-eq/cm^2
  FactorMap memory_node_scaling;  // node -> CPC multiplier for set_node

  friend bool operator==(const FactorPack&, const FactorPack&) = default;
};

/// Where a non-computing subkind's factor lives.
struct FactorRef {
  QuantityBasis basis;  // mass -> cpm, area -> cpa_other, count -> fixed
  const Factor* factor;
};

/// Resolves a subkind against cpm / cpa_other / fixed. Returns nullopt when
/// it is absent from all three or present in more than one.
std::optional<FactorRef> resolve_subkind(const FactorPack& pack,
                                         std::string_view subkind);

/// Name of the pack section backing a basis: "CPM", "CPA", "fixed-item".
std::string_view factor_section_name(QuantityBasis basis);

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) =
      default;
};

/// Field-set, positivity, stride and bitwidth rules.
std::vector<std::string> validate_kernel(KernelType type,
                                         const KernelConfig& config);

ValidationReport validate_network(const NetworkDescription& net);
ValidationReport validate_device(const DeviceDescription& device,
                                 const FactorPack& pack);
ValidationReport validate_factor_pack(const FactorPack& pack);

/// Shared bitwidth of a network; nullopt when empty or mixed.
std::optional<int> network_bitwidth(const NetworkDescription& net);

}  // namespace iotcarbon
