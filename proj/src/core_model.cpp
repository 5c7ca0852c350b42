#include <algorithm>
#include <cctype>
#include <sstream>

#include "iotcarbon/core.h"

namespace iotcarbon {

namespace {

struct KernelTypeInfo {
  KernelType type;
  std::string_view tag;
  std::string_view stem;
};

constexpr std::array<KernelTypeInfo, 8> kKernelTypeInfo = {{
    {KernelType::kConvBnRelu, "conv+bn+relu", "conv_bn_relu"},
    {KernelType::kDwConvBnRelu, "dwconv+bn+relu", "dwconv_bn_relu"},
    {KernelType::kBnRelu, "bn+relu", "bn_relu"},
    {KernelType::kRelu, "relu", "relu"},
    {KernelType::kPool, "avg/max pool", "pool"},
    {KernelType::kFc, "fc", "fc"},
    {KernelType::kConcat, "concat", "concat"},
    {KernelType::kOthers, "others", "others"},
}};

constexpr std::array<std::string_view, kNumConfigFields> kFieldNames = {
    "hw", "c_i", "c_o", "ks", "s", "bw", "c_i1", "c_i2", "c_i3", "c_i4"};

using F = ConfigField;
constexpr std::array kConvFields = {F::kHw, F::kCi, F::kCo, F::kKs, F::kS, F::kBw};
constexpr std::array kDwFields = {F::kHw, F::kCi, F::kKs, F::kS, F::kBw};
constexpr std::array kElementwiseFields = {F::kHw, F::kCi, F::kBw};
constexpr std::array kFcFields = {F::kCi, F::kCo, F::kBw};
constexpr std::array kConcatFields = {F::kHw,  F::kCi1, F::kCi2,
                                      F::kCi3, F::kCi4, F::kBw};

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view to_string(KernelType type) {
  for (const auto& info : kKernelTypeInfo)
    if (info.type == type) return info.tag;
  return "?";
}

KernelType parse_kernel_type(std::string_view tag) {
  for (const auto& info : kKernelTypeInfo)
    if (info.tag == tag || info.stem == tag) return info.type;
  throw ParseError("unknown kernel type '" + std::string(tag) + "'");
}

std::string_view file_stem(KernelType type) {
  for (const auto& info : kKernelTypeInfo)
    if (info.type == type) return info.stem;
  return "unknown";
}

std::string_view to_string(ConfigField field) {
  return kFieldNames[static_cast<std::size_t>(field)];
}

std::optional<ConfigField> parse_config_field(std::string_view name) {
  for (std::size_t i = 0; i < kFieldNames.size(); ++i)
    if (kFieldNames[i] == name) return static_cast<ConfigField>(i);
  return std::nullopt;
}

std::span<const ConfigField> config_fields(KernelType type) {
  switch (type) {
    case KernelType::kConvBnRelu:
      return kConvFields;
    case KernelType::kDwConvBnRelu:
    case KernelType::kPool:
      return kDwFields;
    case KernelType::kFc:
      return kFcFields;
    case KernelType::kConcat:
      return kConcatFields;
    case KernelType::kBnRelu:
    case KernelType::kRelu:
    case KernelType::kOthers:
      return kElementwiseFields;
  }
  return {};
}

int KernelConfig::require(ConfigField field) const {
  auto value = get(field);
  if (!value)
    throw Error("config field '" + std::string(to_string(field)) +
                "' is required");
  return *value;
}

KernelConfig make_config(KernelType type, std::initializer_list<int> values) {
  auto fields = config_fields(type);
  if (values.size() != fields.size())
    throw Error("make_config: " + std::string(to_string(type)) + " takes " +
                std::to_string(fields.size()) + " values");
  KernelConfig config;
  auto it = values.begin();
  for (auto field : fields) config.set(field, *it++);
  return config;
}

std::string describe(KernelType type, const KernelConfig& config) {
  std::ostringstream out;
  out << to_string(type) << '(';
  bool first = true;
  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto value = config.get(static_cast<ConfigField>(i));
    if (!value) continue;
    if (!first) out << ", ";
    out << kFieldNames[i] << '=' << *value;
    first = false;
  }
  out << ')';
  return out.str();
}

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::kCpu:
      return "CPU";
    case UnitKind::kGpu:
      return "GPU";
    case UnitKind::kNpu:
      return "NPU";
  }
  return "?";
}

UnitKind parse_unit_kind(std::string_view text) {
  auto value = lower(text);
  if (value == "cpu") return UnitKind::kCpu;
  if (value == "gpu") return UnitKind::kGpu;
  if (value == "npu") return UnitKind::kNpu;
  throw ParseError("unknown execution unit '" + std::string(text) + "'");
}

std::string describe(const ExecutionUnit& unit) {
  return std::string(to_string(unit.kind)) + "@" + unit.soc;
}

const std::vector<SocSpec>& soc_registry() {
  static const std::vector<SocSpec> registry = {
      {"snapdragon-8-gen3",
       "Snapdragon 8 G3",
       {"1x Cortex-X4", "5x Cortex-A720", "2x Cortex-A520"},
       "Adreno 750",
       "Hexagon"},
      {"exynos-2100",
       "Exynos 2100",
       {"1x Cortex-X1", "3x Cortex-A78", "4x Cortex-A55"},
       "Mali G78",
       "3-core NPU"},
  };
  return registry;
}

const SocSpec* find_soc(std::string_view id) {
  for (const auto& soc : soc_registry())
    if (soc.id == id) return &soc;
  return nullptr;
}

bool bitwidth_allowed(UnitKind kind, int bw) {
  if (kind == UnitKind::kNpu) return bw == 4 || bw == 8 || bw == 16;
  return bw == 32;
}

std::string_view to_string(ComputingKind kind) {
  switch (kind) {
    case ComputingKind::kSoC:
      return "SoC";
    case ComputingKind::kChipset:
      return "Chipset";
    case ComputingKind::kDram:
      return "DRAM";
    case ComputingKind::kFlash:
      return "Flash";
  }
  return "?";
}

ComputingKind parse_computing_kind(std::string_view text) {
  auto value = lower(text);
  if (value == "soc") return ComputingKind::kSoC;
  if (value == "chipset") return ComputingKind::kChipset;
  if (value == "dram") return ComputingKind::kDram;
  if (value == "flash") return ComputingKind::kFlash;
  throw ParseError("unknown computing component kind '" + std::string(text) +
                   "'");
}

namespace {
constexpr std::array<std::pair<NonComputingKind, std::string_view>, 8>
    kNonComputingNames = {{
        {NonComputingKind::kActuator, "Actuator"},
        {NonComputingKind::kCasing, "Casing"},
        {NonComputingKind::kConnectivity, "Connectivity"},
        {NonComputingKind::kPcb, "PCB"},
        {NonComputingKind::kPowerSupply, "PowerSupply"},
        {NonComputingKind::kSensing, "Sensing"},
        {NonComputingKind::kUi, "UI"},
        {NonComputingKind::kOthers, "Others"},
    }};
}  // namespace

std::string_view to_string(NonComputingKind kind) {
  for (const auto& [k, name] : kNonComputingNames)
    if (k == kind) return name;
  return "?";
}

NonComputingKind parse_non_computing_kind(std::string_view text) {
  auto value = lower(text);
  for (const auto& [k, name] : kNonComputingNames)
    if (lower(name) == value) return k;
  throw ParseError("unknown non-computing component kind '" +
                   std::string(text) + "'");
}

std::string_view to_string(QuantityBasis basis) {
  switch (basis) {
    case QuantityBasis::kMass:
      return "mass";
    case QuantityBasis::kArea:
      return "area";
    case QuantityBasis::kCount:
      return "count";
  }
  return "?";
}

std::string row_label(const ComputingComponent& component) {
  return component.label.empty() ? std::string(to_string(component.kind))
                                 : component.label;
}

std::string row_label(const NonComputingComponent& component) {
  if (!component.label.empty()) return component.label;
  switch (component.kind) {
    case NonComputingKind::kPowerSupply:
      return "Battery";
    case NonComputingKind::kOthers:
      return "Other";
    default:
      return std::string(to_string(component.kind));
  }
}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::kPaperText:
      return "paper-text";
    case Provenance::kTableCalibrated:
      return "table-calibrated";
    case Provenance::kUser:
      return "user";
  }
  return "?";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "paper-text") return Provenance::kPaperText;
  if (text == "table-calibrated") return Provenance::kTableCalibrated;
  if (text == "user") return Provenance::kUser;
  throw ParseError("unknown provenance '" + std::string(text) + "'");
}

std::optional<FactorRef> resolve_subkind(const FactorPack& pack,
                                         std::string_view subkind) {
  std::optional<FactorRef> found;
  int hits = 0;
  auto probe = [&](const FactorMap& map, QuantityBasis basis) {
    auto it = map.find(subkind);
    if (it == map.end()) return;
    ++hits;
    found = FactorRef{basis, &it->second};
  };
  probe(pack.cpm, QuantityBasis::kMass);
  probe(pack.cpa_other, QuantityBasis::kArea);
  probe(pack.fixed, QuantityBasis::kCount);
  if (hits != 1) return std::nullopt;
  return found;
}

std::string_view factor_section_name(QuantityBasis basis) {
  switch (basis) {
    case QuantityBasis::kMass:
      return "CPM";
    case QuantityBasis::kArea:
      return "CPA";
    case QuantityBasis::kCount:
      return "fixed-item";
  }
  return "?";
}

std::optional<int> network_bitwidth(const NetworkDescription& net) {
  if (net.kernels.empty()) return std::nullopt;
  int bw = net.kernels.front().config.bw();
  for (const auto& kernel : net.kernels)
    if (kernel.config.bw() != bw) return std::nullopt;
  return bw;
}

}  // namespace iotcarbon
