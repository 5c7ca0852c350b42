#include "iotcarbon/scenario.h"

#include <algorithm>
#include <cctype>

#include "iotcarbon/embodied.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

FactorMap& section_of(FactorPack& pack, QuantityBasis basis) {
  switch (basis) {
    case QuantityBasis::kMass: return pack.cpm;
    case QuantityBasis::kArea: return pack.cpa_other;
    case QuantityBasis::kCount: return pack.fixed;
  }
  return pack.cpm;
}

// Points every component of `kind` at a scaled copy of its factor so other
// components sharing the material keep the original value.
void recycle(Case& c, NonComputingKind kind, double multiplier,
             std::string_view what) {
  if (!(multiplier >= 0.0))
    throw Error(std::string(what) + " multiplier must be non-negative");
  bool found = false;
  for (auto& comp : c.device.non_computing) {
    if (comp.kind != kind) continue;
    found = true;
    auto ref = resolve_subkind(c.pack, comp.subkind);
    if (!ref)
      throw LookupError("no unique factor for " + std::string(to_string(kind)) +
                        " subkind '" + comp.subkind + "'");
    if (ref->basis != comp.quantity.basis)
      throw Error("subkind '" + comp.subkind + "' is not " +
                  std::string(to_string(comp.quantity.basis)) + "-based");
    Factor scaled = *ref->factor;
    scaled.value *= multiplier;
    scaled.provenance = Provenance::kUser;
    scaled.note = "recycled, x" + format_number(multiplier) + " of " + comp.subkind;
    std::string name = "recycled(" + format_number(multiplier) + ") " + comp.subkind;
    section_of(c.pack, comp.quantity.basis).insert_or_assign(name, scaled);
    comp.subkind = name;
  }
  if (!found)
    throw Error(std::string(what) + ": device " + c.device.name + " has no " +
                std::string(to_string(kind)) + " component");
}

void set_node(Case& c, const SetNode& t) {
  if (t.kinds.empty()) throw Error("set_node needs at least one component kind");
  NodeTable::from_pack(c.pack).lookup(t.node);  // throws on an unknown node
  bool found = false;
  for (auto kind : t.kinds) {
    bool has = false;
    for (auto& comp : c.device.computing) {
      if (comp.kind != kind) continue;
      has = true;
      if (is_logic(kind)) comp.node = t.node;
    }
    if (!has) continue;
    found = true;
    if (is_logic(kind)) continue;
    auto scale = c.pack.memory_node_scaling.find(t.node);
    if (scale == c.pack.memory_node_scaling.end())
      throw LookupError("factor pack has no memory_node_scaling entry for " +
                        t.node);
    auto key = std::string(to_string(kind));
    auto cpc = c.pack.cpc.find(key);
    if (cpc == c.pack.cpc.end())
      throw LookupError("factor pack has no CPC entry for " + key);
    cpc->second.value *= scale->second.value;
    cpc->second.provenance = scale->second.provenance;
    cpc->second.note = "scaled to " + t.node;
  }
  if (!found)
    throw Error("set_node: device " + c.device.name +
                " has none of the targeted component kinds");
}

void set_execution(Case& c, const SetExecution& t) {
  if (!bitwidth_allowed(t.kind, t.bitwidth))
    throw Error("bitwidth " + std::to_string(t.bitwidth) + " cannot run on " +
                std::string(to_string(t.kind)));
  c.unit.kind = t.kind;
  if (!c.network) return;
  for (auto& k : c.network->kernels) k.config.set(ConfigField::kBw, t.bitwidth);
}

}  // namespace

std::string describe(const Transform& t) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SetExecution>) {
          return "set_execution(" + std::string(to_string(x.kind)) + ", " +
                 std::to_string(x.bitwidth) + ")";
        } else if constexpr (std::is_same_v<T, RecycleCasing>) {
          return "recycle_casing(" + format_number(x.multiplier) + ")";
        } else if constexpr (std::is_same_v<T, RecyclePcb>) {
          return "recycle_pcb(" + format_number(x.multiplier) + ")";
        } else if constexpr (std::is_same_v<T, SetNode>) {
          std::string kinds;
          for (auto k : x.kinds)
            kinds += (kinds.empty() ? "" : "/") + std::string(to_string(k));
          return "set_node(" + kinds + ", " + x.node + ")";
        } else if constexpr (std::is_same_v<T, SetRegion>) {
          return "set_region(" + x.region + ")";
        } else {
          return "set_usage(" + format_number(x.usage.inferences_per_day) +
                 "/day, " + format_number(x.usage.active_years) + " y, " +
                 x.usage.region + ")";
        }
      },
      t);
}

Case apply_scenario(Case c, const Scenario& scenario) {
  for (const auto& t : scenario.transforms) {
    try {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SetExecution>) {
              set_execution(c, x);
            } else if constexpr (std::is_same_v<T, RecycleCasing>) {
              recycle(c, NonComputingKind::kCasing, x.multiplier, "recycle_casing");
            } else if constexpr (std::is_same_v<T, RecyclePcb>) {
              recycle(c, NonComputingKind::kPcb, x.multiplier, "recycle_pcb");
            } else if constexpr (std::is_same_v<T, SetNode>) {
              set_node(c, x);
            } else if constexpr (std::is_same_v<T, SetRegion>) {
              lookup_ci(c.pack.ci, x.region);
              c.usage.region = x.region;
            } else {
              auto problems = validate_usage(x.usage);
              if (!problems.empty()) throw ValidationError(problems);
              c.usage = x.usage;
            }
          },
          t);
    } catch (const ValidationError&) {
      throw;
    } catch (const LookupError& e) {
      throw LookupError("scenario " + scenario.name + ", " + describe(t) + ": " +
                        e.what());
    } catch (const Error& e) {
      throw Error("scenario " + scenario.name + ", " + describe(t) + ": " +
                  e.what());
    }
  }
  return c;
}

std::vector<std::string> named_scenarios() {
  return {"baseline", "rcase", "rpcb", "22nm", "npu4", "npu8", "npu16", "gpu", "cpu"};
}

std::vector<std::string> mitigation_scenarios() {
  return {"rcase", "rpcb", "22nm", "npu4"};
}

Scenario parse_scenario(std::string_view text) {
  Scenario out;
  out.name = trim(text);
  if (out.name.empty()) throw LookupError("empty scenario name");
  for (const auto& raw : split(out.name, '+')) {
    auto part = trim(raw);
    auto name = lower(part);
    if (name == "baseline" || name == "none") continue;
    if (name == "rcase") {
      out.transforms.emplace_back(RecycleCasing{0.0});
    } else if (name == "rpcb") {
      out.transforms.emplace_back(RecyclePcb{0.0});
    } else if (name == "22nm") {
      out.transforms.emplace_back(SetNode{
          {ComputingKind::kChipset, ComputingKind::kDram, ComputingKind::kFlash},
          "22nm"});
    } else if (name == "npu4" || name == "npu8" || name == "npu16") {
      out.transforms.emplace_back(SetExecution{UnitKind::kNpu, std::stoi(name.substr(3))});
    } else if (name == "gpu") {
      out.transforms.emplace_back(SetExecution{UnitKind::kGpu, 32});
    } else if (name == "cpu") {
      out.transforms.emplace_back(SetExecution{UnitKind::kCpu, 32});
    } else if (name.rfind("region=", 0) == 0 && part.size() > 7) {
      out.transforms.emplace_back(SetRegion{part.substr(7)});
    } else {
      std::string known;
      for (const auto& n : named_scenarios()) known += " " + n;
      throw LookupError("unknown scenario '" + part + "' (known:" + known +
                        " region=XX)");
    }
  }
  return out;
}

}  // namespace iotcarbon
