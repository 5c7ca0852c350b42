#include "iotcarbon/energy_predictor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "iotcarbon/flops.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

std::string regime_of(UnitKind kind) {
  return kind == UnitKind::kNpu ? "int" : "fp32";
}

std::vector<std::string> feature_layout(KernelType type) {
  std::vector<std::string> out;
  for (auto f : config_fields(type)) out.emplace_back(to_string(f));
  out.emplace_back("work");
  out.emplace_back("traffic");
  out.emplace_back("bit_work");
  return out;
}

std::vector<double> features(KernelType type, const KernelConfig& config) {
  std::vector<double> out;
  for (auto f : config_fields(type))
    out.push_back(std::log1p(config.get(f).value_or(0)));
  out.push_back(std::log1p(kernel_flops({type, config})));
  out.push_back(std::log1p(kernel_traffic({type, config})));
  out.push_back(std::log1p(kernel_flops({type, config}) * config.bw()));
  return out;
}

std::vector<int> monotone_directions(KernelType type) {
  std::vector<int> out;
  for (auto f : config_fields(type)) out.push_back(f == ConfigField::kS ? -1 : 1);
  out.push_back(1);
  out.push_back(1);
  out.push_back(1);
  return out;
}

std::string KernelEnergyModel::fingerprint() const {
  std::ostringstream out;
  out << std::hex << dataset_hash << std::dec << ";n=" << n_samples
      << ";trees=" << hyperparams.n_trees << ";depth="
      << (hyperparams.max_depth ? std::to_string(*hyperparams.max_depth)
                                : std::string("none"))
      << ";leaf=" << hyperparams.min_samples_leaf
      << ";fps=" << format_number(hyperparams.features_per_split)
      << ";bootstrap=" << hyperparams.bootstrap
      << ";seed=" << hyperparams.seed << ";monotone=" << hyperparams.monotone
      << ";rsp=" << hyperparams.random_split_points;
  return out.str();
}

KernelEnergyModel train_forest(const BenchmarkDataset& train,
                               const ForestHyperparams& hp, unsigned threads) {
  hp.validate();
  if (train.empty()) throw Error("cannot train on an empty dataset");
  const auto& first = train.samples.front();
  for (const auto& s : train.samples)
    if (s.kernel_type != first.kernel_type || !(s.unit == first.unit))
      throw Error("training set mixes populations: " +
                  std::string(to_string(first.kernel_type)) + " on " +
                  describe(first.unit) + " and " +
                  std::string(to_string(s.kernel_type)) + " on " +
                  describe(s.unit));
  if (train.size() < static_cast<std::size_t>(hp.min_samples_leaf))
    throw Error("training set has " + std::to_string(train.size()) +
                " samples, fewer than min_samples_leaf " +
                std::to_string(hp.min_samples_leaf));

  KernelEnergyModel model;
  model.kernel_type = first.kernel_type;
  model.unit = first.unit;
  model.layout = feature_layout(model.kernel_type);
  model.hyperparams = hp;
  model.dataset_hash = dataset_hash(train);
  model.n_samples = train.size();

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  x.reserve(train.size());
  for (const auto& s : train.samples) {
    auto problems = validate_kernel(s.kernel_type, s.config);
    if (!problems.empty()) throw ValidationError(problems);
    x.push_back(features(s.kernel_type, s.config));
    y.push_back(s.energy_j);
  }
  model.hull.assign(model.layout.size(), {x[0][0], x[0][0]});
  for (std::size_t f = 0; f < model.layout.size(); ++f) {
    model.hull[f] = {x[0][f], x[0][f]};
    for (const auto& row : x) {
      model.hull[f].min = std::min(model.hull[f].min, row[f]);
      model.hull[f].max = std::max(model.hull[f].max, row[f]);
    }
  }
  model.forest = Forest::train(x, y, hp, monotone_directions(model.kernel_type),
                               threads);
  return model;
}

double predict_kernel(const KernelEnergyModel& model,
                      const KernelConfig& config, Diagnostics* diag) {
  auto problems = validate_kernel(model.kernel_type, config);
  if (!problems.empty()) throw ValidationError(problems);
  if (!bitwidth_allowed(model.unit.kind, config.bw()))
    throw Error("bitwidth " + std::to_string(config.bw()) +
                " cannot run on " + std::string(to_string(model.unit.kind)));
  auto x = features(model.kernel_type, config);
  if (diag && model.hull.size() == x.size()) {
    std::string outside;
    for (std::size_t f = 0; f < x.size(); ++f)
      if (x[f] < model.hull[f].min || x[f] > model.hull[f].max)
        outside += (outside.empty() ? "" : ", ") + model.layout[f];
    if (!outside.empty())
      diag->warn("extrapolating " + describe(model.kernel_type, config) +
                 " outside the training range in: " + outside);
  }
  return model.forest.predict(x);
}

std::string describe(const ModelKey& key) {
  return std::string(to_string(key.kernel_type)) + " on " +
         describe(key.unit) + " (" + key.regime + ")";
}

void ModelBundle::add(KernelEnergyModel model) {
  ModelKey key{model.kernel_type, model.unit, regime_of(model.unit.kind)};
  models.insert_or_assign(std::move(key), std::move(model));
}

const KernelEnergyModel& ModelBundle::at(KernelType type,
                                         const ExecutionUnit& unit) const {
  ModelKey key{type, unit, regime_of(unit.kind)};
  auto it = models.find(key);
  if (it == models.end())
    throw LookupError("model bundle has no model for " + describe(key));
  return it->second;
}

bool ModelBundle::contains(KernelType type, const ExecutionUnit& unit) const {
  return models.count({type, unit, regime_of(unit.kind)}) > 0;
}

ModelBundle train_bundle(const BenchmarkDataset& ds,
                         const ForestHyperparams& hp, unsigned threads) {
  ModelBundle bundle;
  for (const auto& [type, unit] : ds.strata())
    bundle.add(train_forest(ds.filter(type, unit), hp, threads));
  return bundle;
}

NetworkPrediction predict_network(const ModelBundle& bundle,
                                  const NetworkDescription& net,
                                  const ExecutionUnit& unit,
                                  Diagnostics* diag) {
  auto report = validate_network(net);
  if (!report.ok()) throw ValidationError(report.violations);
  NetworkPrediction out;
  for (std::size_t i = 0; i < net.kernels.size(); ++i) {
    const auto& k = net.kernels[i];
    const KernelEnergyModel* model;
    try {
      model = &bundle.at(k.type, unit);
    } catch (const LookupError& e) {
      throw LookupError("kernel[" + std::to_string(i) + "] " +
                        describe(k.type, k.config) + ": " + e.what());
    }
    double e = predict_kernel(*model, k.config, diag);
    out.breakdown.push_back({i, k, e});
    out.total_j += e;
  }
  return out;
}

Metrics summarize(std::vector<Residual> residuals) {
  if (residuals.empty()) throw Error("cannot evaluate on an empty test set");
  Metrics m;
  for (auto& r : residuals) {
    r.relative = (r.predicted_j - r.actual_j) / r.actual_j;
    m.mape += std::abs(r.relative);
    m.mean_signed += r.relative;
    m.max_abs = std::max(m.max_abs, std::abs(r.relative));
  }
  m.mape /= static_cast<double>(residuals.size());
  m.mean_signed /= static_cast<double>(residuals.size());
  m.residuals = std::move(residuals);
  return m;
}

Metrics evaluate_model(const KernelEnergyModel& model,
                       const BenchmarkDataset& test) {
  std::vector<Residual> residuals;
  for (const auto& s : test.samples)
    residuals.push_back({s.energy_j, predict_kernel(model, s.config), 0.0});
  return summarize(std::move(residuals));
}

Metrics evaluate_model(const ModelBundle& bundle,
                       const BenchmarkDataset& test) {
  std::vector<Residual> residuals;
  for (const auto& s : test.samples)
    residuals.push_back(
        {s.energy_j,
         predict_kernel(bundle.at(s.kernel_type, s.unit), s.config), 0.0});
  return summarize(std::move(residuals));
}

}  // namespace iotcarbon
