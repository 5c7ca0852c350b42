#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iotcarbon/core.h"
#include "iotcarbon/energy_dataset.h"
#include "iotcarbon/forest.h"

namespace iotcarbon {

/// Bitwidth regime of a unit: "int" on NPUs, "fp32" on CPU and GPU.
std::string regime_of(UnitKind kind);

/// Feature names of a kernel type: its config fields, then "work" (FLOPs),
/// "traffic" (elements moved) and "bit_work" (FLOPs x bitwidth). Values are
/// log1p-scaled.
std::vector<std::string> feature_layout(KernelType type);
std::vector<double> features(KernelType type, const KernelConfig& config);
/// +1 where energy grows with the feature, -1 where it falls (stride).
std::vector<int> monotone_directions(KernelType type);

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

struct KernelEnergyModel {
  KernelType kernel_type = KernelType::kOthers;
  ExecutionUnit unit;
  std::vector<std::string> layout;
  std::vector<FeatureRange> hull;  // training range per feature
  ForestHyperparams hyperparams;
  std::uint64_t dataset_hash = 0;
  std::size_t n_samples = 0;
  Forest forest;

  std::string fingerprint() const;
  friend bool operator==(const KernelEnergyModel&, const KernelEnergyModel&) =
      default;
};

/// Trains on one (kernel type, unit) population. Throws Error when the
/// dataset is empty, mixed, or smaller than min_samples_leaf.
KernelEnergyModel train_forest(const BenchmarkDataset& train,
                               const ForestHyperparams& hp,
                               unsigned threads = 0);

/// Strictly positive energy in J. Throws on a config that does not fit the
/// model's kernel type. Out-of-hull dimensions are reported through `diag`.
double predict_kernel(const KernelEnergyModel& model,
                      const KernelConfig& config, Diagnostics* diag = nullptr);

struct ModelKey {
  KernelType kernel_type = KernelType::kOthers;
  ExecutionUnit unit;
  std::string regime;

  friend bool operator==(const ModelKey&, const ModelKey&) = default;
  friend auto operator<=>(const ModelKey&, const ModelKey&) = default;
};

std::string describe(const ModelKey& key);

struct ModelBundle {
  std::map<ModelKey, KernelEnergyModel> models;

  void add(KernelEnergyModel model);
  /// Throws LookupError naming the missing (kernel, unit, regime).
  const KernelEnergyModel& at(KernelType type, const ExecutionUnit& unit) const;
  bool contains(KernelType type, const ExecutionUnit& unit) const;

  friend bool operator==(const ModelBundle&, const ModelBundle&) = default;
};

/// One model per (kernel type, unit) population of `ds`.
ModelBundle train_bundle(const BenchmarkDataset& ds, const ForestHyperparams& hp,
                         unsigned threads = 0);

struct KernelPrediction {
  std::size_t index = 0;
  Kernel kernel;
  double energy_j = 0.0;
};

struct NetworkPrediction {
  double total_j = 0.0;
  std::vector<KernelPrediction> breakdown;
};

/// Sum of per-kernel predictions in network order. Each kernel must
/// resolve to a model for `unit`.
NetworkPrediction predict_network(const ModelBundle& bundle,
                                  const NetworkDescription& net,
                                  const ExecutionUnit& unit,
                                  Diagnostics* diag = nullptr);

struct Residual {
  double actual_j = 0.0;
  double predicted_j = 0.0;
  double relative = 0.0;  // (predicted - actual) / actual
};

struct Metrics {
  double mape = 0.0;         // mean |relative|, as a fraction
  double mean_signed = 0.0;  // mean relative
  double max_abs = 0.0;      // max |relative|
  std::vector<Residual> residuals;
};

/// Throws Error on an empty test set.
Metrics evaluate_model(const KernelEnergyModel& model,
                       const BenchmarkDataset& test);
Metrics evaluate_model(const ModelBundle& bundle, const BenchmarkDataset& test);

/// Metrics from (actual, predicted) pairs.
Metrics summarize(std::vector<Residual> residuals);

}  // namespace iotcarbon
