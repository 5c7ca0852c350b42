#pragma once

// What-if rewrites of an estimation case. Named scenarios:
//   rcase        fully recycled casing (casing CPM x 0)
//   rpcb         fully recycled PCB (PCB CPA x 0)
//   22nm         chipset, DRAM and Flash moved to 22nm
//   npu4/8/16    inference on the NPU at that bitwidth
//   gpu, cpu     fp32 inference on that unit
//   region=XX    another grid
// "a+b" composes left to right; "baseline" is the identity.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iotcarbon/core.h"
#include "iotcarbon/operational.h"

namespace iotcarbon {

/// Everything one footprint estimate depends on.
struct Case {
  DeviceDescription device;
  std::optional<NetworkDescription> network;
  UsageProfile usage;
  ExecutionUnit unit;
  FactorPack pack;

  friend bool operator==(const Case&, const Case&) = default;
};

struct SetExecution {
  UnitKind kind = UnitKind::kNpu;
  int bitwidth = 8;
};

struct RecycleCasing {
  double multiplier = 0.0;
};

struct RecyclePcb {
  double multiplier = 0.0;
};

/// Moves the listed component kinds to `node`. Memory CPC entries are scaled
/// by the pack's memory_node_scaling entry for the node.
struct SetNode {
  std::vector<ComputingKind> kinds;
  std::string node;
};

struct SetRegion {
  std::string region;
};

struct SetUsage {
  UsageProfile usage;
};

using Transform = std::variant<SetExecution, RecycleCasing, RecyclePcb, SetNode,
                               SetRegion, SetUsage>;

std::string describe(const Transform& t);

struct Scenario {
  std::string name;
  std::vector<Transform> transforms;
};

/// Applies the transforms in order. Throws Error when a transform targets
/// something the case does not have (no casing, no PCB, unknown node...).
Case apply_scenario(Case base, const Scenario& scenario);

/// Parses a scenario name, e.g. "rcase+rpcb". Throws LookupError on an
/// unknown part.
Scenario parse_scenario(std::string_view text);

/// Names accepted by parse_scenario, besides region=XX.
std::vector<std::string> named_scenarios();

/// The mitigation scenarios compared by default in what-if runs.
std::vector<std::string> mitigation_scenarios();

}  // namespace iotcarbon
