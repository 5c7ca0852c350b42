#include <gtest/gtest.h>

#include <set>

#include "iotcarbon/adaptive_sampling.h"
#include "iotcarbon/energy_predictor.h"
#include "iotcarbon/rng.h"
#include "iotcarbon/synthetic.h"

namespace iotcarbon {
namespace {

const ExecutionUnit kGpu{UnitKind::kGpu, "snapdragon-8-gen3"};

TEST(ConfigSpace, SizeIsProductOfAxes) {
  auto space = standard_space(KernelType::kRelu, UnitKind::kNpu);
  EXPECT_EQ(space.size(), standard_hw_values().size() *
                              standard_channel_values().size() * 3);
}

TEST(ConfigSpace, IndexRoundTrip) {
  auto space = standard_space(KernelType::kConvBnRelu, UnitKind::kGpu);
  for (std::uint64_t i : {std::uint64_t{0}, std::uint64_t{17}, space.size() / 3,
                          space.size() - 1})
    EXPECT_EQ(space.index_of(space.at(i)), i);
}

TEST(ConfigSpace, MembersAreValidKernels) {
  for (auto type : kAllKernelTypes)
    for (auto unit : {UnitKind::kCpu, UnitKind::kGpu, UnitKind::kNpu}) {
      auto space = standard_space(type, unit);
      Rng rng(1);
      for (int k = 0; k < 50; ++k) {
        auto config = space.at(rng.uniform_index(space.size()));
        EXPECT_TRUE(validate_kernel(type, config).empty()) << describe(type, config);
        EXPECT_TRUE(bitwidth_allowed(unit, config.bw()));
      }
    }
}

TEST(ConfigSpace, ForeignConfigNotContained) {
  auto space = standard_space(KernelType::kRelu, UnitKind::kGpu);
  EXPECT_FALSE(space.contains(make_config(KernelType::kRelu, {6, 16, 32})));
  EXPECT_TRUE(space.contains(make_config(KernelType::kRelu, {7, 16, 32})));
}

TEST(ConfigSpace, NeighborsDifferOnOneAxis) {
  auto space = standard_space(KernelType::kDwConvBnRelu, UnitKind::kGpu);
  std::uint64_t index = space.size() / 2;
  auto here = space.at(index);
  auto fields = config_fields(KernelType::kDwConvBnRelu);
  for (auto n : space.neighbors(index)) {
    auto there = space.at(n);
    int differing = 0;
    for (auto f : fields) differing += here.get(f) != there.get(f);
    EXPECT_GE(differing, 1);
    EXPECT_LE(differing, 2);  // (ks, s) move together
  }
}

TEST(ConfigSpace, StrideNeverExceedsKernelSize) {
  auto space = standard_space(KernelType::kPool, UnitKind::kGpu);
  for (std::uint64_t i = 0; i < space.size(); i += 7) {
    auto c = space.at(i);
    EXPECT_LE(*c.s(), *c.ks());
  }
}

TEST(ConfigSpace, WithValuesRestrictsAxis) {
  auto space = standard_space(KernelType::kRelu, UnitKind::kGpu)
                   .with_values(ConfigField::kHw, {7, 14});
  EXPECT_EQ(space.size(), 2 * standard_channel_values().size());
}

TEST(UniformSample, DistinctMembers) {
  auto space = standard_space(KernelType::kFc, UnitKind::kGpu);
  auto picks = uniform_sample(space, 100, 3);
  std::set<KernelConfig> unique(picks.begin(), picks.end());
  EXPECT_EQ(unique.size(), 100u);
  for (const auto& c : picks) EXPECT_TRUE(space.contains(c));
  EXPECT_EQ(picks, uniform_sample(space, 100, 3));
}

TEST(UniformSample, BudgetBounds) {
  auto space = standard_space(KernelType::kFc, UnitKind::kGpu);
  EXPECT_TRUE(uniform_sample(space, 0, 1).empty());
  EXPECT_EQ(uniform_sample(space, space.size(), 1).size(), space.size());
  EXPECT_THROW(uniform_sample(space, space.size() + 1, 1), Error);
}

struct Harness {
  SyntheticCostModel model = calibrated_cost_model(0.0);
  KernelType type = KernelType::kDwConvBnRelu;
  ConfigSpace space = standard_space(type, UnitKind::kGpu);
  int refits = 0;

  EnergyOracle oracle() {
    return [this](const KernelConfig& c) {
      return model.energy({type, c}, UnitKind::kGpu);
    };
  }
  RefitFn refit() {
    return [this](const std::vector<KernelConfig>& configs,
                  const std::vector<double>& labels) -> EnergyEstimate {
      ++refits;
      BenchmarkDataset ds;
      for (std::size_t i = 0; i < configs.size(); ++i)
        ds.samples.push_back({type, configs[i], kGpu, labels[i], 1});
      ForestHyperparams hp;
      hp.n_trees = 10;
      auto m = std::make_shared<KernelEnergyModel>(train_forest(ds, hp, 1));
      return [m](const KernelConfig& c) { return predict_kernel(*m, c); };
    };
  }
};

TEST(AdaptiveSample, ZeroBudgetIsEmpty) {
  Harness h;
  EXPECT_TRUE(adaptive_sample(h.space, {}, h.oracle(), h.refit(), 0, 1).empty());
  EXPECT_EQ(h.refits, 0);
}

TEST(AdaptiveSample, ReturnsBudgetDistinctMembers) {
  Harness h;
  auto picks = adaptive_sample(h.space, {}, h.oracle(), h.refit(), 120, 5);
  ASSERT_EQ(picks.size(), 120u);
  std::set<KernelConfig> unique(picks.begin(), picks.end());
  EXPECT_EQ(unique.size(), 120u);
  for (const auto& c : picks) EXPECT_TRUE(h.space.contains(c));
  EXPECT_GE(h.refits, 1);
}

TEST(AdaptiveSample, DeterministicBySeed) {
  Harness a, b;
  EXPECT_EQ(adaptive_sample(a.space, {}, a.oracle(), a.refit(), 60, 8),
            adaptive_sample(b.space, {}, b.oracle(), b.refit(), 60, 8));
}

TEST(AdaptiveSample, ExhaustsSmallSpace) {
  Harness h;
  auto space = standard_space(KernelType::kFc, UnitKind::kGpu)
                   .with_values(ConfigField::kCi, {16, 32});
  h.type = KernelType::kFc;
  auto picks = adaptive_sample(space, {}, h.oracle(), h.refit(), space.size(), 2);
  std::set<KernelConfig> unique(picks.begin(), picks.end());
  EXPECT_EQ(unique.size(), space.size());
}

TEST(AdaptiveSample, RejectsOversizedBudgetAndZeroRounds) {
  Harness h;
  EXPECT_THROW(adaptive_sample(h.space, {}, h.oracle(), h.refit(), h.space.size() + 1, 1),
               Error);
  EXPECT_THROW(adaptive_sample(h.space, {}, h.oracle(), h.refit(), 10, 1, {0}), Error);
}

}  // namespace
}  // namespace iotcarbon
