#pragma once

// Calibrated synthetic energy oracle standing in for physical measurement.
//
// GPU energy of a kernel is  overhead + per_unit x (W + memory_weight x M)
// with W = kernel_flops and M = kernel_traffic. NPU energy scales the GPU
// value by a per-bitwidth factor; CPU energy scales it by a gap that grows
// log-linearly with W across the kernel type's range, from cpu_gap_min for
// the lightest kernels to cpu_gap_max for the heaviest.

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "iotcarbon/config_space.h"
#include "iotcarbon/core.h"
#include "iotcarbon/energy_dataset.h"

namespace iotcarbon {

/// Reference sample count and NPU energy range of one kernel type.
struct KernelProfile {
  KernelType type;
  std::size_t samples;
  double lo_mj;
  double hi_mj;
};

const std::array<KernelProfile, 8>& kernel_profiles();
const KernelProfile& kernel_profile(KernelType type);

struct TypeCost {
  double overhead_j = 0.0;
  double per_unit_j = 0.0;
  double log_work_min = 0.0;  // CPU gap interpolation range
  double log_work_max = 1.0;
};

struct SyntheticCostModel {
  std::map<KernelType, TypeCost> costs;
  double memory_weight = 20.0;
  std::map<int, double> npu_bitwidth_factor = {
      {16, 0.77}, {8, 0.42}, {4, 0.30}};
  double cpu_gap_min = 1.1;
  double cpu_gap_max = 18.0;
  double noise_sigma = 0.05;

  /// Noise-free energy in J. Throws on an unknown type or NPU bitwidth.
  double energy(const Kernel& kernel, UnitKind unit) const;
  double cpu_gap(const Kernel& kernel) const;
};

/// Cost model whose NPU energies span each kernel type's reference range,
/// with a 1.25x margin inside both ends.
SyntheticCostModel calibrated_cost_model(double noise_sigma = 0.05);

/// `n` distinct configurations drawn uniformly from `space`, in ascending
/// space order, each labelled with the model energy times lognormal noise.
/// Throws when n exceeds the space size.
BenchmarkDataset generate_synthetic(const SyntheticCostModel& model,
                                    const ConfigSpace& space,
                                    const ExecutionUnit& unit, std::uint64_t n,
                                    std::uint64_t seed);

/// Sample count of the bundled dataset: the reference count, capped by the
/// size of the unit's space.
std::size_t bundled_sample_count(KernelType type, UnitKind unit);

/// Datasets for every kernel type (or just `only`) on `unit`, each type
/// drawn from its own seed stream.
BenchmarkDataset bundled_synthetic(const SyntheticCostModel& model,
                                   const ExecutionUnit& unit,
                                   std::uint64_t seed,
                                   std::optional<KernelType> only = {});

/// Sum of noise-free kernel energies.
double oracle_network_energy(const SyntheticCostModel& model,
                             const NetworkDescription& net, UnitKind unit);

}  // namespace iotcarbon
