#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.h"
#include "iotcarbon/energy_predictor.h"
#include "iotcarbon/model_io.h"
#include "iotcarbon/synthetic.h"
#include "property.h"

namespace iotcarbon {
namespace {

using testing::bundled_network;
using testing::for_all;
using testing::TempDir;

const ExecutionUnit kNpu{UnitKind::kNpu, "snapdragon-8-gen3"};
const ExecutionUnit kGpu{UnitKind::kGpu, "snapdragon-8-gen3"};

ForestHyperparams quick(int trees = 20) {
  ForestHyperparams hp;
  hp.n_trees = trees;
  hp.features_per_split = 1.0;
  return hp;
}

BenchmarkDataset constant_relu(double energy) {
  BenchmarkDataset ds;
  for (int hw : {7, 14, 28, 56})
    for (int ci : {16, 32, 64})
      ds.samples.push_back({KernelType::kRelu,
                            make_config(KernelType::kRelu, {hw, ci, 8}), kNpu,
                            energy, 1});
  return ds;
}

// Noise-free NPU models for every kernel type, trained once.
const ModelBundle& clean_npu() {
  static const ModelBundle bundle = [] {
    auto ds = bundled_synthetic(calibrated_cost_model(0.0), kNpu, 21);
    return train_bundle(ds, quick(30));
  }();
  return bundle;
}

TEST(Features, LayoutMatchesValues) {
  for (auto type : kAllKernelTypes) {
    auto space = standard_space(type, UnitKind::kNpu);
    EXPECT_EQ(feature_layout(type).size(), features(type, space.at(0)).size());
    EXPECT_EQ(monotone_directions(type).size(), feature_layout(type).size());
  }
}

TEST(Features, StrideRunsDownhill) {
  auto layout = feature_layout(KernelType::kConvBnRelu);
  auto dirs = monotone_directions(KernelType::kConvBnRelu);
  for (std::size_t i = 0; i < layout.size(); ++i)
    EXPECT_EQ(dirs[i], layout[i] == "s" ? -1 : 1) << layout[i];
}

TEST(TrainForest, ConstantDatasetPredictsConstant) {
  auto model = train_forest(constant_relu(5.0), quick());
  EXPECT_EQ(predict_kernel(model, make_config(KernelType::kRelu, {112, 512, 4})), 5.0);
}

TEST(TrainForest, DepthZeroGivesGeometricMean) {
  auto ds = constant_relu(1.0);
  double log_sum = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ds.samples[i].energy_j = 1e-3 * (i + 1);
    log_sum += std::log(ds.samples[i].energy_j);
  }
  auto hp = quick(3);
  hp.max_depth = 0;
  auto model = train_forest(ds, hp);
  EXPECT_NEAR(predict_kernel(model, ds.samples[0].config),
              std::exp(log_sum / ds.size()), 1e-15);
}

TEST(TrainForest, MemorizesTrainingPoints) {
  auto ds = constant_relu(1.0);
  for (std::size_t i = 0; i < ds.size(); ++i) ds.samples[i].energy_j = 1e-3 * (i + 1);
  auto hp = quick(5);
  hp.min_samples_leaf = 1;
  hp.bootstrap = false;
  hp.monotone = false;
  auto model = train_forest(ds, hp);
  for (const auto& s : ds.samples) EXPECT_EQ(predict_kernel(model, s.config), s.energy_j);
  auto m = evaluate_model(model, ds);
  EXPECT_EQ(m.mape, 0.0);
  EXPECT_EQ(m.max_abs, 0.0);
}

TEST(TrainForest, RejectsMixedOrTinyData) {
  auto ds = constant_relu(1.0);
  ds.samples.push_back({KernelType::kRelu, make_config(KernelType::kRelu, {7, 16, 32}),
                        kGpu, 1.0, 1});
  EXPECT_THROW(train_forest(ds, quick()), Error);
  EXPECT_THROW(train_forest(BenchmarkDataset{}, quick()), Error);
  auto one = constant_relu(1.0);
  one.samples.resize(1);
  EXPECT_THROW(train_forest(one, quick()), Error);
}

TEST(TrainForest, DeterministicAcrossThreads) {
  auto ds = bundled_synthetic(calibrated_cost_model(), kGpu, 3, KernelType::kPool);
  EXPECT_EQ(train_forest(ds, quick(), 1), train_forest(ds, quick(), 0));
}

TEST(TrainForest, FingerprintTracksDataAndParams) {
  auto ds = constant_relu(2.0);
  auto a = train_forest(ds, quick());
  auto hp = quick();
  hp.seed = 99;
  EXPECT_NE(a.fingerprint(), train_forest(ds, hp).fingerprint());
  ds.samples[0].energy_j = 3.0;
  EXPECT_NE(a.fingerprint(), train_forest(ds, quick()).fingerprint());
}

TEST(PredictKernel, RejectsWrongFieldsAndBitwidth) {
  auto model = train_forest(constant_relu(1.0), quick());
  EXPECT_THROW(predict_kernel(model, make_config(KernelType::kFc, {16, 16, 8})),
               ValidationError);
  EXPECT_THROW(predict_kernel(model, make_config(KernelType::kRelu, {7, 16, 32})), Error);
}

TEST(PredictKernel, WarnsOutsideHull) {
  auto model = train_forest(constant_relu(1.0), quick());
  Diagnostics diag;
  predict_kernel(model, make_config(KernelType::kRelu, {224, 16, 8}), &diag);
  ASSERT_FALSE(diag.warnings.empty());
  EXPECT_NE(diag.warnings[0].find("hw"), std::string::npos);
  Diagnostics quiet;
  predict_kernel(model, make_config(KernelType::kRelu, {14, 32, 8}), &quiet);
  EXPECT_TRUE(quiet.warnings.empty());
}

TEST(PredictKernel, ConvWithinToleranceOfCostModel) {
  auto cost = calibrated_cost_model(0.0);
  auto config = make_config(KernelType::kConvBnRelu, {112, 32, 64, 3, 1, 8});
  double oracle = cost.energy({KernelType::kConvBnRelu, config}, UnitKind::kNpu);
  double got = predict_kernel(clean_npu().at(KernelType::kConvBnRelu, kNpu), config);
  EXPECT_NEAR(got / oracle, 1.0, 0.15);
}

TEST(PredictKernel, ConvHeldOutAccuracy) {
  auto ds = bundled_synthetic(calibrated_cost_model(0.0), kNpu, 22,
                              KernelType::kConvBnRelu);
  ASSERT_EQ(ds.size(), 3096u);
  auto [train, test] = split_dataset(ds, 0.8, 1);
  auto model = train_forest(train, quick(30));
  EXPECT_LE(evaluate_model(model, test).mape, 0.15);
}

TEST(PredictKernel, MonotoneInSizeFields) {
  const auto& bundle = clean_npu();
  auto r = for_all(300, 23, [&](Rng& rng) {
        auto type = KernelType::kConvBnRelu;
        auto space = standard_space(type, UnitKind::kNpu);
        auto c = space.at(rng.uniform_index(space.size()));
        auto field = std::vector<ConfigField>{ConfigField::kHw, ConfigField::kCi,
                                              ConfigField::kCo}[rng.uniform_index(3)];
        const auto& values = field == ConfigField::kHw ? standard_hw_values()
                                                       : standard_channel_values();
        auto it = std::upper_bound(values.begin(), values.end(), *c.get(field));
        if (it == values.end()) throw testing::Discard{};
        auto bigger = c;
        bigger.set(field, *it);
        return std::make_pair(c, bigger);
      },
      [&](const auto& p) -> std::optional<std::string> {
        const auto& m = bundle.at(KernelType::kConvBnRelu, kNpu);
        if (predict_kernel(m, p.second) < predict_kernel(m, p.first))
          return describe(KernelType::kConvBnRelu, p.second) + " predicted lower";
        return std::nullopt;
      });
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Bundle, LookupByUnitAndRegime) {
  ModelBundle bundle;
  bundle.add(train_forest(constant_relu(1.0), quick(2)));
  EXPECT_TRUE(bundle.contains(KernelType::kRelu, kNpu));
  EXPECT_FALSE(bundle.contains(KernelType::kRelu, kGpu));
  EXPECT_FALSE(bundle.contains(KernelType::kRelu, {UnitKind::kNpu, "exynos-2100"}));
  try {
    bundle.at(KernelType::kRelu, kGpu);
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("fp32"), std::string::npos);
  }
}

TEST(PredictNetwork, EmptyNetworkIsZero) {
  NetworkDescription net;
  net.name = "empty";
  EXPECT_EQ(predict_network(clean_npu(), net, kNpu).total_j, 0.0);
}

TEST(PredictNetwork, SingleKernelEqualsKernel) {
  NetworkDescription net;
  net.name = "one";
  auto c = make_config(KernelType::kRelu, {28, 64, 8});
  net.kernels.push_back({KernelType::kRelu, c});
  auto p = predict_network(clean_npu(), net, kNpu);
  EXPECT_EQ(p.total_j, predict_kernel(clean_npu().at(KernelType::kRelu, kNpu), c));
  ASSERT_EQ(p.breakdown.size(), 1u);
}

TEST(PredictNetwork, SumOfKernels) {
  auto net = bundled_network("resnet18");
  for (auto& k : net.kernels) k.config.set(ConfigField::kBw, 4);
  auto p = predict_network(clean_npu(), net, kNpu);
  double sum = 0;
  for (const auto& b : p.breakdown) sum += b.energy_j;
  EXPECT_EQ(p.total_j, sum);
  EXPECT_EQ(p.breakdown.size(), net.kernels.size());
}

TEST(PredictNetwork, ResNetInt4NearOracle) {
  auto net = bundled_network("resnet18");
  for (auto& k : net.kernels) k.config.set(ConfigField::kBw, 4);
  double oracle = oracle_network_energy(calibrated_cost_model(0.0), net, UnitKind::kNpu);
  double got = predict_network(clean_npu(), net, kNpu).total_j;
  EXPECT_NEAR(got / oracle, 1.0, 0.21);
}

TEST(PredictNetwork, MissingModelNamesKernel) {
  ModelBundle bundle;
  bundle.add(train_forest(constant_relu(1.0), quick(2)));
  NetworkDescription net;
  net.name = "n";
  net.kernels.push_back({KernelType::kRelu, make_config(KernelType::kRelu, {7, 16, 8})});
  net.kernels.push_back({KernelType::kFc, make_config(KernelType::kFc, {16, 16, 8})});
  try {
    predict_network(bundle, net, kNpu);
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("kernel[1]"), std::string::npos);
  }
}

TEST(Evaluate, ConstantModelConstantData) {
  auto ds = constant_relu(4.0);
  auto m = evaluate_model(train_forest(ds, quick()), ds);
  for (const auto& r : m.residuals) EXPECT_EQ(r.relative, 0.0);
  EXPECT_THROW(evaluate_model(train_forest(ds, quick()), BenchmarkDataset{}), Error);
}

TEST(Evaluate, SummaryStatistics) {
  auto m = summarize({{1.0, 1.1, 0}, {2.0, 1.8, 0}});
  EXPECT_NEAR(m.mape, 0.1, 1e-12);
  EXPECT_NEAR(m.mean_signed, 0.0, 1e-12);
  EXPECT_NEAR(m.max_abs, 0.1, 1e-12);
}

TEST(ModelIo, RoundTripPreservesPredictions) {
  auto ds = bundled_synthetic(calibrated_cost_model(), kGpu, 4, KernelType::kFc);
  ModelBundle bundle = train_bundle(ds, quick(5));
  auto text = serialize_bundle(bundle);
  auto back = bundle_from_json(nlohmann::json::parse(text));
  EXPECT_EQ(back, bundle);
  EXPECT_EQ(serialize_bundle(back), text);
}

TEST(ModelIo, SaveAndLoad) {
  TempDir dir("models");
  ModelBundle bundle;
  bundle.add(train_forest(constant_relu(1.5), quick(3)));
  save_bundle(dir / "m.json", bundle);
  EXPECT_EQ(load_bundle(dir / "m.json"), bundle);
}

TEST(ModelIo, TamperingDetected) {
  ModelBundle bundle;
  bundle.add(train_forest(constant_relu(1.5), quick(3)));
  auto doc = to_json(bundle);
  auto bad_hash = doc;
  bad_hash["models"][0]["n_samples"] = 1;
  EXPECT_THROW(bundle_from_json(bad_hash), ParseError);
  auto bad_kind = doc;
  bad_kind["kind"] = "device";
  EXPECT_THROW(bundle_from_json(bad_kind), ParseError);
}

}  // namespace
}  // namespace iotcarbon
