#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iotcarbon/core.h"

namespace iotcarbon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

std::filesystem::path data_dir();
/// --factors, else $IOTCARBON_FACTORS, else the bundled calibrated pack.
std::filesystem::path factor_path(const std::optional<std::string>& flag);

/// A path, or the stem of a bundled fixture ("pixel-watch-2", "resnet18").
std::filesystem::path resolve_fixture(const std::string& name,
                                      const std::string& folder);

/// Bundled device stems in reference order.
const std::vector<std::string>& google_devices();
/// Bundled network stems in reference order.
const std::vector<std::string>& bundled_networks();

struct DeviceCheck {
  std::string device;
  double total_kg = 0.0;
  double table_kg = 0.0;
  double reported_kg = 0.0;
  double deviation_pct = 0.0;         // vs reported
  double table_deviation_pct = 0.0;   // printed deviation
  bool ok = false;
};

/// Totals of the bundled devices against the expected-values fixture.
std::vector<DeviceCheck> check_google(const FactorPack& pack);

struct FlopsCheck {
  std::string network;
  double flops = 0.0;
  double macs = 0.0;
  double declared = 0.0;
  double deviation_pct = 0.0;
  bool ok = false;  // within 10%
};

std::vector<FlopsCheck> check_networks();

}  // namespace iotcarbon::cli
