#include <gtest/gtest.h>

#include "fixtures.h"
#include "iotcarbon/embodied.h"
#include "iotcarbon/scenario.h"

namespace iotcarbon {
namespace {

using testing::bundled_device;
using testing::bundled_network;
using testing::bundled_pack;
using testing::bundled_usage;

Case watch_case() {
  Case c;
  c.device = bundled_device("pixel-watch-2");
  c.network = bundled_network("mobilenetv2");
  c.usage = bundled_usage("hourly");
  c.pack = bundled_pack();
  return c;
}

double embodied(const Case& c) {
  return embodied_total(c.device, std::nullopt, c.pack).total_kg;
}

TEST(ParseScenario, NamedParts) {
  EXPECT_TRUE(parse_scenario("baseline").transforms.empty());
  EXPECT_EQ(parse_scenario("rcase").transforms.size(), 1u);
  EXPECT_EQ(parse_scenario("rcase+rpcb+22nm").transforms.size(), 3u);
  EXPECT_TRUE(std::holds_alternative<SetExecution>(parse_scenario("NPU8").transforms[0]));
  auto npu = std::get<SetExecution>(parse_scenario("npu16").transforms[0]);
  EXPECT_EQ(npu.kind, UnitKind::kNpu);
  EXPECT_EQ(npu.bitwidth, 16);
  auto region = std::get<SetRegion>(parse_scenario("region=FR").transforms[0]);
  EXPECT_EQ(region.region, "FR");
}

TEST(ParseScenario, UnknownNameListsKnown) {
  try {
    parse_scenario("rcase+solar");
    FAIL() << "expected LookupError";
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("rpcb"), std::string::npos);
  }
  EXPECT_THROW(parse_scenario(""), LookupError);
}

TEST(ParseScenario, MitigationSet) {
  EXPECT_EQ(mitigation_scenarios(),
            (std::vector<std::string>{"rcase", "rpcb", "22nm", "npu4"}));
}

TEST(ApplyScenario, EmptyIsIdentity) {
  auto c = watch_case();
  EXPECT_EQ(apply_scenario(c, Scenario{"none", {}}), c);
}

TEST(ApplyScenario, RecycledCasingZeroesCasingRows) {
  auto c = apply_scenario(watch_case(), parse_scenario("rcase"));
  auto report = embodied_total(c.device, std::nullopt, c.pack);
  EXPECT_EQ(report.label_total("Casing"), 0.0);
  EXPECT_GT(report.label_total("PCB"), 0.0);
}

TEST(ApplyScenario, RecyclingLeavesSharedFactorAlone) {
  auto base = watch_case();
  auto c = apply_scenario(base, Scenario{"half", {RecycleCasing{0.5}}});
  for (const auto& [key, f] : base.pack.cpm) EXPECT_EQ(c.pack.cpm.at(key), f);
  auto before = embodied_total(base.device, std::nullopt, base.pack).label_total("Casing");
  auto after = embodied_total(c.device, std::nullopt, c.pack).label_total("Casing");
  EXPECT_NEAR(after, before / 2, 1e-12);
}

TEST(ApplyScenario, RecycledPcb) {
  auto c = apply_scenario(watch_case(), parse_scenario("rpcb"));
  EXPECT_EQ(embodied_total(c.device, std::nullopt, c.pack).label_total("PCB"), 0.0);
}

TEST(ApplyScenario, RecyclingNeedsTheComponent) {
  auto c = watch_case();
  std::erase_if(c.device.non_computing, [](const NonComputingComponent& x) {
    return x.kind == NonComputingKind::kPcb;
  });
  EXPECT_THROW(apply_scenario(c, parse_scenario("rpcb")), Error);
  EXPECT_THROW(apply_scenario(watch_case(), Scenario{"neg", {RecycleCasing{-1}}}), Error);
}

TEST(ApplyScenario, MovingToLargerNodeLowersEmbodied) {
  for (auto stem : {"pixel-watch-2", "chromecast-hd", "pixel-6-pro"}) {
    auto base = watch_case();
    base.device = bundled_device(stem);
    auto c = apply_scenario(base, parse_scenario("22nm"));
    EXPECT_LT(embodied(c), embodied(base)) << stem;
    for (const auto& comp : c.device.computing)
      if (comp.kind == ComputingKind::kChipset) EXPECT_EQ(comp.node, "22nm");
  }
}

TEST(ApplyScenario, UnknownNodeRejected) {
  EXPECT_THROW(apply_scenario(watch_case(),
                              Scenario{"x", {SetNode{{ComputingKind::kChipset}, "1nm"}}}),
               Error);
}

TEST(ApplyScenario, ExecutionRewritesUnitAndBitwidth) {
  auto c = apply_scenario(watch_case(), parse_scenario("npu4"));
  EXPECT_EQ(c.unit.kind, UnitKind::kNpu);
  for (const auto& k : c.network->kernels) EXPECT_EQ(k.config.bw(), 4);
  auto back = apply_scenario(c, parse_scenario("gpu"));
  EXPECT_EQ(back.unit.kind, UnitKind::kGpu);
  for (const auto& k : back.network->kernels) EXPECT_EQ(k.config.bw(), 32);
  EXPECT_THROW(apply_scenario(watch_case(),
                              Scenario{"x", {SetExecution{UnitKind::kNpu, 32}}}),
               Error);
}

TEST(ApplyScenario, RegionAndUsage) {
  auto c = apply_scenario(watch_case(), parse_scenario("region=AU"));
  EXPECT_EQ(c.usage.region, "AU");
  UsageProfile u{100, 2, "FR"};
  auto d = apply_scenario(watch_case(), Scenario{"u", {SetUsage{u}}});
  EXPECT_EQ(d.usage, u);
}

TEST(ApplyScenario, ComposesLeftToRight) {
  auto both = apply_scenario(watch_case(), parse_scenario("rcase+rpcb"));
  auto stepwise = apply_scenario(apply_scenario(watch_case(), parse_scenario("rcase")),
                                 parse_scenario("rpcb"));
  EXPECT_EQ(embodied(both), embodied(stepwise));
}

TEST(Describe, ReadableTransforms) {
  EXPECT_EQ(describe(Transform{RecycleCasing{0}}), "recycle_casing(0)");
  EXPECT_EQ(describe(Transform{SetRegion{"FR"}}), "set_region(FR)");
}

}  // namespace
}  // namespace iotcarbon
