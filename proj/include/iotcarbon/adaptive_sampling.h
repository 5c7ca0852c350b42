#pragma once

// Round-based error-guided sampling of a configuration space.
//
// Round 0 draws its quota uniformly. Every later round spends half its
// quota on fresh uniform draws; those draws are labelled by the oracle and
// serve as probes. The other half goes to unselected neighbours (one step
// along one dimension) of the probes where the current model's relative
// error is highest. After each round the model is refit on everything
// selected so far.

#include <cstdint>
#include <functional>
#include <vector>

#include "iotcarbon/config_space.h"

namespace iotcarbon {

using EnergyOracle = std::function<double(const KernelConfig&)>;
using EnergyEstimate = std::function<double(const KernelConfig&)>;
/// Builds a model from labelled configurations.
using RefitFn = std::function<EnergyEstimate(
    const std::vector<KernelConfig>&, const std::vector<double>&)>;

struct AdaptiveOptions {
  int rounds = 4;
};

/// Returns `budget` distinct configurations of `space` in selection order.
/// `current` may be empty; it then comes from `refit` after round 0.
/// Throws Error when the space is empty and budget > 0, or when the budget
/// exceeds the space.
std::vector<KernelConfig> adaptive_sample(const ConfigSpace& space,
                                          EnergyEstimate current,
                                          const EnergyOracle& oracle,
                                          const RefitFn& refit,
                                          std::size_t budget,
                                          std::uint64_t seed,
                                          const AdaptiveOptions& options = {});

/// `budget` distinct configurations drawn uniformly.
std::vector<KernelConfig> uniform_sample(const ConfigSpace& space,
                                         std::size_t budget,
                                         std::uint64_t seed);

}  // namespace iotcarbon
