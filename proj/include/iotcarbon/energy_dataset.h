#pragma once

// Kernel-level energy samples and benchmark files.
//
// JSON-lines benchmark files start with a header record
//   {"schema_version": 1, "kind": "benchmark", "source": "synthetic",
//    "generator_seed": 7}
// followed by one record per sample
//   {"kernel_type": "conv+bn+relu", "unit": "NPU", "soc": "exynos-2100",
//    "hw": 56, "c_i": 64, ..., "energy_mJ": 0.42, "runs": 500}
// CSV files carry a header row naming the same columns; empty cells are
// absent fields. Energies are stored in mJ on disk and J in memory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotcarbon/core.h"

namespace iotcarbon {

struct EnergySample {
  KernelType kernel_type = KernelType::kOthers;
  KernelConfig config;
  ExecutionUnit unit;
  double energy_j = 0.0;
  int runs = 1;

  friend bool operator==(const EnergySample&, const EnergySample&) = default;
};

enum class DataSource { kMeasured, kSynthetic };

std::string_view to_string(DataSource source);
DataSource parse_data_source(std::string_view text);

struct BenchmarkDataset {
  std::vector<EnergySample> samples;
  DataSource source = DataSource::kMeasured;
  std::optional<std::uint64_t> generator_seed;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  /// Samples of one (kernel type, unit) population.
  BenchmarkDataset filter(KernelType type, const ExecutionUnit& unit) const;
  /// Distinct (kernel type, unit) populations, first-appearance order.
  std::vector<std::pair<KernelType, ExecutionUnit>> strata() const;

  friend bool operator==(const BenchmarkDataset&, const BenchmarkDataset&) =
      default;
};

/// Stable FNV-1a digest of the samples, independent of platform.
std::uint64_t dataset_hash(const BenchmarkDataset& ds);

/// Checks a sample against the kernel rules, the unit's bitwidths, and the
/// positivity of energy and runs. Empty when valid.
std::vector<std::string> validate_sample(const EnergySample& sample);

/// Averages duplicate (type, config, unit) rows weighted by runs, keeping
/// first-appearance order. Each merge is reported through `diag`.
void merge_duplicates(BenchmarkDataset& ds, Diagnostics* diag);

/// Reads a ".csv" or JSON-lines benchmark file. Malformed rows raise
/// ParseError with their line number.
BenchmarkDataset ingest_benchmark(const std::filesystem::path& path,
                                  Diagnostics* diag = nullptr);
BenchmarkDataset parse_benchmark_jsonl(const std::string& text,
                                       Diagnostics* diag = nullptr);
BenchmarkDataset parse_benchmark_csv(const std::string& text,
                                     Diagnostics* diag = nullptr);

std::string to_jsonl(const BenchmarkDataset& ds);
std::string to_csv(const BenchmarkDataset& ds);
/// Writes CSV for a ".csv" path, JSON lines otherwise.
void write_benchmark(const std::filesystem::path& path,
                     const BenchmarkDataset& ds);

/// Stratified by (kernel type, unit): each stratum contributes
/// round(fraction x size) samples to train. Strata under two samples go
/// to train with a warning.
std::pair<BenchmarkDataset, BenchmarkDataset> split_dataset(
    const BenchmarkDataset& ds, double train_fraction, std::uint64_t seed,
    Diagnostics* diag = nullptr);

}  // namespace iotcarbon
