#include "iotcarbon/operational.h"

#include "iotcarbon/text.h"

namespace iotcarbon {

double lookup_ci(const FactorMap& registry, std::string_view region) {
  auto it = registry.find(region);
  if (it != registry.end()) return it->second.value;
  std::string known;
  for (const auto& [name, _] : registry)
    known += (known.empty() ? "" : ", ") + name;
  throw LookupError("unknown region '" + std::string(region) +
                    "'; known regions: " + known);
}

double operational_carbon(double energy_per_inference_j, double ci_kg_per_kwh,
                          double num_inferences) {
  if (!(energy_per_inference_j >= 0.0) || !(ci_kg_per_kwh >= 0.0) ||
      !(num_inferences >= 0.0))
    throw Error("operational_carbon inputs must be non-negative (energy " +
                format_number(energy_per_inference_j) + ", ci " +
                format_number(ci_kg_per_kwh) + ", num " +
                format_number(num_inferences) + ")");
  return energy_per_inference_j / kJoulesPerKwh * ci_kg_per_kwh *
         num_inferences;
}

double inference_count(const UsageProfile& profile) {
  return profile.inferences_per_day * kDaysPerYear * profile.active_years;
}

double lifetime_operational(double energy_per_inference_j,
                            const UsageProfile& profile,
                            const FactorMap& registry) {
  auto problems = validate_usage(profile);
  if (!problems.empty()) throw ValidationError(problems);
  double ci = lookup_ci(registry, profile.region);
  return operational_carbon(energy_per_inference_j, ci,
                            inference_count(profile));
}

std::vector<std::string> validate_usage(const UsageProfile& profile,
                                        double lifetime_years) {
  std::vector<std::string> out;
  if (!(profile.inferences_per_day >= 0.0))
    out.push_back("inferences_per_day must be non-negative");
  if (!(profile.active_years >= 0.0))
    out.push_back("active_years must be non-negative");
  if (lifetime_years > 0.0 && profile.active_years > lifetime_years)
    out.push_back("active_years " + format_number(profile.active_years) +
                  " exceeds device lifetime " + format_number(lifetime_years));
  if (profile.region.empty()) out.push_back("usage region is empty");
  return out;
}

}  // namespace iotcarbon
