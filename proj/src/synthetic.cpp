#include "iotcarbon/synthetic.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "iotcarbon/flops.h"
#include "iotcarbon/rng.h"

namespace iotcarbon {

const std::array<KernelProfile, 8>& kernel_profiles() {
  static const std::array<KernelProfile, 8> profiles = {{
      {KernelType::kConvBnRelu, 3096, 0.001, 108.2},
      {KernelType::kDwConvBnRelu, 1047, 0.008, 0.61},
      {KernelType::kBnRelu, 300, 0.001, 12.21},
      {KernelType::kRelu, 138, 0.002, 6.32},
      {KernelType::kPool, 84, 0.014, 1.312},
      {KernelType::kFc, 72, 0.002, 32.23},
      {KernelType::kConcat, 426, 0.043, 3.12},
      {KernelType::kOthers, 294, 0.001, 12.38},
  }};
  return profiles;
}

const KernelProfile& kernel_profile(KernelType type) {
  for (const auto& p : kernel_profiles())
    if (p.type == type) return p;
  throw LookupError("no profile for kernel type");
}

double SyntheticCostModel::cpu_gap(const Kernel& kernel) const {
  const auto& cost = costs.at(kernel.type);
  double span = cost.log_work_max - cost.log_work_min;
  double t = span > 0 ? (std::log(kernel_flops(kernel)) - cost.log_work_min) / span
                      : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return cpu_gap_min * std::pow(cpu_gap_max / cpu_gap_min, t);
}

double SyntheticCostModel::energy(const Kernel& kernel, UnitKind unit) const {
  auto it = costs.find(kernel.type);
  if (it == costs.end())
    throw LookupError("cost model has no entry for " +
                      std::string(to_string(kernel.type)));
  double base = it->second.overhead_j +
                it->second.per_unit_j * (kernel_flops(kernel) +
                                         memory_weight * kernel_traffic(kernel));
  switch (unit) {
    case UnitKind::kGpu:
      return base;
    case UnitKind::kCpu:
      return base * cpu_gap(kernel);
    case UnitKind::kNpu: {
      auto f = npu_bitwidth_factor.find(kernel.config.bw());
      if (f == npu_bitwidth_factor.end())
        throw LookupError("no NPU factor for bitwidth " +
                          std::to_string(kernel.config.bw()));
      return base * f->second;
    }
  }
  return base;
}

namespace {

// Minimum and maximum of f over the space's corners: single-field axes take
// their first and last values, joint axes every value.
std::pair<double, double> corner_extremes(
    const ConfigSpace& space, const std::function<double(const Kernel&)>& f) {
  const auto& dims = space.dimensions();
  std::vector<std::vector<std::size_t>> choices;
  for (const auto& dim : dims) {
    std::vector<std::size_t> idx;
    if (dim.fields.size() == 1) {
      idx.push_back(0);
      if (dim.values.size() > 1) idx.push_back(dim.values.size() - 1);
    } else {
      for (std::size_t i = 0; i < dim.values.size(); ++i) idx.push_back(i);
    }
    choices.push_back(std::move(idx));
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::vector<std::size_t> pos(dims.size(), 0);
  while (true) {
    Kernel k{space.type(), {}};
    for (std::size_t d = 0; d < dims.size(); ++d) {
      const auto& v = dims[d].values[choices[d][pos[d]]];
      for (std::size_t j = 0; j < v.size(); ++j)
        k.config.set(dims[d].fields[j], v[j]);
    }
    double x = f(k);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    std::size_t d = dims.size();
    while (d > 0) {
      --d;
      if (++pos[d] < choices[d].size()) break;
      pos[d] = 0;
      if (d == 0) return {lo, hi};
    }
    if (dims.empty()) return {lo, hi};
  }
}

}  // namespace

SyntheticCostModel calibrated_cost_model(double noise_sigma) {
  constexpr double kMargin = 1.25;
  SyntheticCostModel model;
  model.noise_sigma = noise_sigma;
  double f_lo = model.npu_bitwidth_factor.begin()->second;   // INT4
  double f_hi = model.npu_bitwidth_factor.rbegin()->second;  // INT16
  for (const auto& profile : kernel_profiles()) {
    auto npu = standard_space(profile.type, UnitKind::kNpu);
    auto [b_min, b_max] = corner_extremes(npu, [&](const Kernel& k) {
      return kernel_flops(k) + model.memory_weight * kernel_traffic(k);
    });
    double target_lo = profile.lo_mj * 1e-3 * kMargin / f_lo;
    double target_hi = profile.hi_mj * 1e-3 / kMargin / f_hi;
    TypeCost cost;
    cost.per_unit_j = (target_hi - target_lo) / (b_max - b_min);
    cost.overhead_j = target_lo - cost.per_unit_j * b_min;
    auto gpu = standard_space(profile.type, UnitKind::kGpu);
    auto [w_min, w_max] = corner_extremes(
        gpu, [](const Kernel& k) { return std::log(kernel_flops(k)); });
    cost.log_work_min = w_min;
    cost.log_work_max = w_max;
    model.costs[profile.type] = cost;
  }
  return model;
}

BenchmarkDataset generate_synthetic(const SyntheticCostModel& model,
                                    const ConfigSpace& space,
                                    const ExecutionUnit& unit, std::uint64_t n,
                                    std::uint64_t seed) {
  if (n > space.size())
    throw Error("cannot draw " + std::to_string(n) + " distinct configs from " +
                std::to_string(space.size()) + " for " +
                std::string(to_string(space.type())));
  Rng rng(seed);
  auto indices = rng.sample_distinct(space.size(), n);
  std::sort(indices.begin(), indices.end());
  BenchmarkDataset ds;
  ds.source = DataSource::kSynthetic;
  ds.generator_seed = seed;
  ds.samples.reserve(indices.size());
  for (auto index : indices) {
    EnergySample s;
    s.kernel_type = space.type();
    s.config = space.at(index);
    s.unit = unit;
    s.runs = 500;
    double clean = model.energy({s.kernel_type, s.config}, unit.kind);
    double noise = model.noise_sigma > 0.0
                       ? std::exp(model.noise_sigma * rng.normal())
                       : 1.0;
    s.energy_j = clean * noise;
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

std::size_t bundled_sample_count(KernelType type, UnitKind unit) {
  auto size = standard_space(type, unit).size();
  return static_cast<std::size_t>(
      std::min<std::uint64_t>(kernel_profile(type).samples, size));
}

BenchmarkDataset bundled_synthetic(const SyntheticCostModel& model,
                                   const ExecutionUnit& unit,
                                   std::uint64_t seed,
                                   std::optional<KernelType> only) {
  BenchmarkDataset out;
  out.source = DataSource::kSynthetic;
  out.generator_seed = seed;
  for (std::size_t t = 0; t < kAllKernelTypes.size(); ++t) {
    auto type = kAllKernelTypes[t];
    if (only && *only != type) continue;
    auto part = generate_synthetic(model, standard_space(type, unit.kind), unit,
                                   bundled_sample_count(type, unit.kind),
                                   derive_seed(seed, t));
    out.samples.insert(out.samples.end(), part.samples.begin(),
                       part.samples.end());
  }
  return out;
}

double oracle_network_energy(const SyntheticCostModel& model,
                             const NetworkDescription& net, UnitKind unit) {
  double total = 0.0;
  for (const auto& k : net.kernels) total += model.energy(k, unit);
  return total;
}

}  // namespace iotcarbon
