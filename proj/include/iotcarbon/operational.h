#pragma once

#include <string>
#include <string_view>

#include "iotcarbon/core.h"

namespace iotcarbon {

inline constexpr double kJoulesPerKwh = 3.6e6;
/// Leap years are ignored.
inline constexpr double kDaysPerYear = 365.0;

struct UsageProfile {
  double inferences_per_day = 0.0;
  double active_years = 3.0;
  std::string region = "UK";

  friend bool operator==(const UsageProfile&, const UsageProfile&) = default;
};

/// Exact, case-sensitive region lookup. Throws LookupError listing the
/// known regions.
double lookup_ci(const FactorMap& registry, std::string_view region);

/// (energy / 3.6e6) x ci x num, in kgCO2-eq. Throws on negative input.
double operational_carbon(double energy_per_inference_j,
                          double ci_kg_per_kwh, double num_inferences);

/// inferences_per_day x 365 x active_years.
double inference_count(const UsageProfile& profile);

double lifetime_operational(double energy_per_inference_j,
                            const UsageProfile& profile,
                            const FactorMap& registry);

/// Empty when valid. `lifetime_years` > 0 adds the active <= lifetime rule.
std::vector<std::string> validate_usage(const UsageProfile& profile,
                                        double lifetime_years = 0.0);

}  // namespace iotcarbon
