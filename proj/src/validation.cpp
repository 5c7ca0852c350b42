#include <algorithm>
#include <cmath>

#include "iotcarbon/core.h"
#include "iotcarbon/embodied.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

std::vector<std::string> validate_kernel(KernelType type,
                                         const KernelConfig& config) {
  std::vector<std::string> out;
  auto prefix = std::string(to_string(type)) + ": ";
  auto fields = config_fields(type);
  auto expected = [&](ConfigField f) {
    return std::find(fields.begin(), fields.end(), f) != fields.end();
  };

  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto field = static_cast<ConfigField>(i);
    bool present = config.has(field);
    if (present && !expected(field))
      out.push_back(prefix + "field '" + std::string(to_string(field)) +
                    "' is not part of this kernel's configuration");
    if (!present && expected(field))
      out.push_back(prefix + "missing field '" +
                    std::string(to_string(field)) + "'");
  }

  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto field = static_cast<ConfigField>(i);
    auto value = config.get(field);
    if (!value) continue;
    // Trailing concat inputs may be zero; everything else is positive.
    bool zero_ok = field == ConfigField::kCi2 || field == ConfigField::kCi3 ||
                   field == ConfigField::kCi4;
    if (*value < 0 || (*value == 0 && !zero_ok))
      out.push_back(prefix + "field '" + std::string(to_string(field)) +
                    "' must be positive, got " + std::to_string(*value));
  }

  if (type == KernelType::kConcat) {
    bool seen_zero = false;
    for (auto f : {ConfigField::kCi2, ConfigField::kCi3, ConfigField::kCi4}) {
      auto value = config.get(f).value_or(0);
      if (value == 0) seen_zero = true;
      else if (seen_zero)
        out.push_back(prefix + "concat inputs must be packed: '" +
                      std::string(to_string(f)) + "' follows an empty input");
    }
  }

  if (config.ks() && config.s() && *config.s() > *config.ks())
    out.push_back(prefix + "stride " + std::to_string(*config.s()) +
                  " exceeds kernel size " + std::to_string(*config.ks()));

  if (auto bw = config.get(ConfigField::kBw);
      bw && *bw != 4 && *bw != 8 && *bw != 16 && *bw != 32)
    out.push_back(prefix + "bitwidth " + std::to_string(*bw) +
                  " not in {4, 8, 16, 32}");
  return out;
}

ValidationReport validate_network(const NetworkDescription& net) {
  ValidationReport report;
  if (net.name.empty()) report.violations.push_back("network name is empty");
  for (std::size_t i = 0; i < net.kernels.size(); ++i) {
    for (auto& v : validate_kernel(net.kernels[i].type, net.kernels[i].config))
      report.violations.push_back("kernel[" + std::to_string(i) + "] " + v);
  }
  if (!net.kernels.empty() && !network_bitwidth(net)) {
    std::vector<int> widths;
    for (const auto& k : net.kernels)
      if (std::find(widths.begin(), widths.end(), k.config.bw()) ==
          widths.end())
        widths.push_back(k.config.bw());
    std::string list;
    for (int w : widths) list += (list.empty() ? "" : ", ") + std::to_string(w);
    report.violations.push_back("network mixes bitwidths {" + list + "}");
  }
  return report;
}

namespace {

void check_factor_map(const FactorMap& map, std::string_view section,
                      ValidationReport& report) {
  for (const auto& [key, factor] : map)
    if (!(factor.value >= 0.0) || !std::isfinite(factor.value))
      report.violations.push_back(std::string(section) + " entry '" + key +
                                  "' must be a non-negative number");
}

}  // namespace

ValidationReport validate_factor_pack(const FactorPack& pack) {
  ValidationReport report;
  check_factor_map(pack.ci, "ci", report);
  check_factor_map(pack.cpa_logic, "cpa_logic", report);
  check_factor_map(pack.cpc, "cpc", report);
  check_factor_map(pack.cpm, "cpm", report);
  check_factor_map(pack.cpd, "cpd", report);
  check_factor_map(pack.fixed, "fixed", report);
  check_factor_map(pack.cpa_other, "cpa_other", report);
  check_factor_map(pack.memory_node_scaling, "memory_node_scaling", report);
  try {
    auto table = NodeTable::from_pack(pack);
    report.warnings = table.monotonicity_warnings();
  } catch (const Error& e) {
    report.violations.push_back(e.what());
  }
  auto shared = [&](const FactorMap& a, const FactorMap& b,
                    std::string_view an, std::string_view bn) {
    for (const auto& [key, _] : a)
      if (b.count(key))
        report.violations.push_back("subkind '" + key + "' appears in both " +
                                    std::string(an) + " and " +
                                    std::string(bn));
  };
  shared(pack.cpm, pack.cpa_other, "cpm", "cpa_other");
  shared(pack.cpm, pack.fixed, "cpm", "fixed");
  shared(pack.cpa_other, pack.fixed, "cpa_other", "fixed");
  return report;
}

ValidationReport validate_device(const DeviceDescription& device,
                                 const FactorPack& pack) {
  ValidationReport report;
  auto& v = report.violations;
  if (!(device.lifetime_years > 0.0)) v.push_back("lifetime must be positive");

  NodeTable table;
  bool table_ok = true;
  try {
    table = NodeTable::from_pack(pack);
  } catch (const Error& e) {
    v.push_back(e.what());
    table_ok = false;
  }

  auto check_share = [&](double share, const std::string& where) {
    if (!(share >= 0.0 && share <= 1.0))
      v.push_back(where + ": time share " + format_number(share) +
                  " outside [0, 1]");
  };

  for (std::size_t i = 0; i < device.computing.size(); ++i) {
    const auto& c = device.computing[i];
    auto where = "computing[" + std::to_string(i) + "] (" +
                 std::string(to_string(c.kind)) + ")";
    check_share(c.time_share, where);
    if (is_logic(c.kind)) {
      if (!c.area_cm2) v.push_back(where + ": logic component needs an area");
      else if (!(*c.area_cm2 >= 0.0))
        v.push_back(where + ": area must be non-negative");
      if (!c.node) v.push_back(where + ": logic component needs a node");
      if (c.capacity_gb)
        v.push_back(where + ": logic component must not carry a capacity");
      if (c.node && table_ok) {
        try {
          auto found = table.lookup(*c.node);
          if (found.interpolated)
            report.warnings.push_back(where + ": node " + *c.node +
                                      " interpolated");
        } catch (const LookupError& e) {
          v.push_back(where + ": " + e.what());
        }
      }
    } else {
      if (!c.capacity_gb)
        v.push_back(where + ": memory component needs a capacity");
      else if (!(*c.capacity_gb >= 0.0))
        v.push_back(where + ": capacity must be non-negative");
      if (c.area_cm2 || c.node)
        v.push_back(where +
                    ": memory component must not carry an area or node");
      if (!pack.cpc.count(to_string(c.kind)))
        v.push_back(where + ": missing CPC entry '" +
                    std::string(to_string(c.kind)) + "'");
    }
  }

  for (std::size_t i = 0; i < device.non_computing.size(); ++i) {
    const auto& c = device.non_computing[i];
    auto where = "non_computing[" + std::to_string(i) + "] (" +
                 std::string(to_string(c.kind)) + "/" + c.subkind + ")";
    check_share(c.time_share, where);
    if (!(c.quantity.value >= 0.0))
      v.push_back(where + ": quantity must be non-negative");
    int hits = static_cast<int>(pack.cpm.count(c.subkind)) +
               static_cast<int>(pack.cpa_other.count(c.subkind)) +
               static_cast<int>(pack.fixed.count(c.subkind));
    if (hits == 0) {
      v.push_back(where + ": missing " +
                  std::string(factor_section_name(c.quantity.basis)) +
                  " entry '" + c.subkind + "'");
    } else if (hits > 1) {
      v.push_back(where + ": subkind '" + c.subkind +
                  "' resolves to more than one factor entry");
    } else {
      auto ref = resolve_subkind(pack, c.subkind);
      if (ref->basis != c.quantity.basis)
        v.push_back(where + ": factor '" + c.subkind + "' is " +
                    std::string(factor_section_name(ref->basis)) +
                    "-based and needs a " +
                    std::string(to_string(ref->basis)) + " quantity");
    }
  }

  for (std::size_t i = 0; i < device.transport.size(); ++i) {
    const auto& leg = device.transport[i];
    auto where = "transport[" + std::to_string(i) + "] (" + leg.mode + ")";
    if (!pack.cpd.count(leg.mode))
      v.push_back(where + ": missing CPD entry '" + leg.mode + "'");
    if (!(leg.mass_g >= 0.0) || !(leg.distance_km >= 0.0))
      v.push_back(where + ": mass and distance must be non-negative");
  }
  return report;
}

}  // namespace iotcarbon
