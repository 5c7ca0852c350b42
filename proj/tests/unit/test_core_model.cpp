#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.h"
#include "iotcarbon/core.h"

namespace iotcarbon {
namespace {

using testing::bundled_device;
using testing::bundled_network;
using testing::bundled_pack;

bool mentions(const std::vector<std::string>& lines, const std::string& text) {
  return std::any_of(lines.begin(), lines.end(), [&](const std::string& l) {
    return l.find(text) != std::string::npos;
  });
}

TEST(KernelType, TagsRoundTrip) {
  for (auto type : kAllKernelTypes)
    EXPECT_EQ(parse_kernel_type(to_string(type)), type);
}

TEST(KernelType, UnknownTagRejected) {
  EXPECT_THROW(parse_kernel_type("conv"), ParseError);
  EXPECT_THROW(parse_kernel_type("FC"), ParseError);
}

TEST(KernelConfig, FieldSetsFollowKernelType) {
  auto fc = config_fields(KernelType::kFc);
  EXPECT_EQ(std::vector<ConfigField>(fc.begin(), fc.end()),
            (std::vector<ConfigField>{ConfigField::kCi, ConfigField::kCo,
                                      ConfigField::kBw}));
  EXPECT_EQ(config_fields(KernelType::kConvBnRelu).size(), 6u);
  EXPECT_EQ(config_fields(KernelType::kConcat).size(), 6u);
  EXPECT_EQ(config_fields(KernelType::kRelu).size(), 3u);
}

TEST(KernelConfig, MakeConfigIsPositional) {
  auto c = make_config(KernelType::kConvBnRelu, {56, 64, 128, 3, 1, 8});
  EXPECT_EQ(c.hw(), 56);
  EXPECT_EQ(c.c_i(), 64);
  EXPECT_EQ(c.c_o(), 128);
  EXPECT_EQ(c.ks(), 3);
  EXPECT_EQ(c.s(), 1);
  EXPECT_EQ(c.bw(), 8);
  EXPECT_THROW(make_config(KernelType::kFc, {1, 2}), Error);
}

TEST(KernelConfig, ValidConfigHasNoViolations) {
  EXPECT_TRUE(validate_kernel(KernelType::kFc,
                              make_config(KernelType::kFc, {1280, 1000, 32}))
                  .empty());
}

TEST(KernelConfig, ForeignFieldRejected) {
  auto c = make_config(KernelType::kFc, {1280, 1000, 32});
  c.set(ConfigField::kS, 1);
  auto v = validate_kernel(KernelType::kFc, c);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(mentions(v, "'s'"));
}

TEST(KernelConfig, MissingFieldRejected) {
  auto c = make_config(KernelType::kFc, {1280, 1000, 32});
  c.set(ConfigField::kCo, std::nullopt);
  EXPECT_TRUE(mentions(validate_kernel(KernelType::kFc, c), "missing field"));
}

TEST(KernelConfig, NonPositiveRejected) {
  auto c = make_config(KernelType::kRelu, {0, 16, 32});
  EXPECT_TRUE(mentions(validate_kernel(KernelType::kRelu, c), "positive"));
}

TEST(KernelConfig, StrideAboveKernelSizeRejected) {
  auto c = make_config(KernelType::kConvBnRelu, {56, 64, 64, 1, 2, 32});
  EXPECT_TRUE(mentions(validate_kernel(KernelType::kConvBnRelu, c), "stride"));
}

TEST(KernelConfig, OddBitwidthRejected) {
  auto c = make_config(KernelType::kRelu, {56, 16, 12});
  EXPECT_TRUE(mentions(validate_kernel(KernelType::kRelu, c), "bitwidth"));
}

TEST(KernelConfig, ConcatInputsMustBePacked) {
  KernelConfig c;
  c.set(ConfigField::kHw, 28).set(ConfigField::kCi1, 64).set(ConfigField::kCi3, 32)
      .set(ConfigField::kBw, 32);
  EXPECT_TRUE(mentions(validate_kernel(KernelType::kConcat, c), "packed"));
}

TEST(ExecutionUnit, BitwidthsPerUnit) {
  EXPECT_TRUE(bitwidth_allowed(UnitKind::kNpu, 4));
  EXPECT_TRUE(bitwidth_allowed(UnitKind::kNpu, 16));
  EXPECT_FALSE(bitwidth_allowed(UnitKind::kNpu, 32));
  EXPECT_TRUE(bitwidth_allowed(UnitKind::kGpu, 32));
  EXPECT_FALSE(bitwidth_allowed(UnitKind::kCpu, 8));
}

TEST(ExecutionUnit, ParseIsCaseInsensitive) {
  EXPECT_EQ(parse_unit_kind("npu"), UnitKind::kNpu);
  EXPECT_EQ(parse_unit_kind("GPU"), UnitKind::kGpu);
  EXPECT_THROW(parse_unit_kind("tpu"), ParseError);
}

TEST(SocRegistry, HoldsBothSocs) {
  EXPECT_EQ(soc_registry().size(), 2u);
  EXPECT_NE(find_soc("snapdragon-8-gen3"), nullptr);
  EXPECT_NE(find_soc("exynos-2100"), nullptr);
  EXPECT_EQ(find_soc("a17"), nullptr);
}

TEST(ValidateNetwork, BundledResNetIsValid) {
  auto report = validate_network(bundled_network("resnet18"));
  EXPECT_TRUE(report.ok()) << report.violations.front();
}

TEST(ValidateNetwork, MixedBitwidthRejected) {
  NetworkDescription net;
  net.name = "mixed";
  net.kernels.push_back({KernelType::kRelu, make_config(KernelType::kRelu, {7, 16, 8})});
  net.kernels.push_back({KernelType::kRelu, make_config(KernelType::kRelu, {7, 16, 16})});
  auto report = validate_network(net);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(mentions(report.violations, "mixes bitwidths"));
  EXPECT_EQ(network_bitwidth(net), std::nullopt);
}

TEST(ValidateNetwork, KernelViolationsNameTheIndex) {
  NetworkDescription net;
  net.name = "bad";
  auto fc = make_config(KernelType::kFc, {16, 16, 32});
  fc.set(ConfigField::kS, 1);
  net.kernels.push_back({KernelType::kFc, fc});
  EXPECT_TRUE(mentions(validate_network(net).violations, "kernel[0]"));
}

TEST(ValidateDevice, BundledDevicesAreValid) {
  auto pack = bundled_pack();
  for (auto stem : {"pixel-watch-2", "chromecast-hd", "pixel-6-pro"}) {
    auto report = validate_device(bundled_device(stem), pack);
    EXPECT_TRUE(report.ok()) << stem;
  }
}

TEST(ValidateDevice, ZeroLifetimeRejected) {
  auto device = bundled_device("pixel-watch-2");
  device.lifetime_years = 0;
  EXPECT_TRUE(mentions(validate_device(device, bundled_pack()).violations,
                       "lifetime must be positive"));
}

TEST(ValidateDevice, MissingMaterialNamed) {
  auto device = bundled_device("pixel-watch-2");
  NonComputingComponent casing;
  casing.kind = NonComputingKind::kCasing;
  casing.subkind = "titanium";
  casing.quantity = {QuantityBasis::kMass, 10};
  device.non_computing.push_back(casing);
  EXPECT_TRUE(mentions(validate_device(device, bundled_pack()).violations,
                       "titanium"));
}

TEST(ValidateDevice, TimeShareOutOfRange) {
  auto device = bundled_device("pixel-watch-2");
  device.computing[0].time_share = 1.5;
  EXPECT_TRUE(mentions(validate_device(device, bundled_pack()).violations,
                       "time share"));
}

TEST(ValidateDevice, LogicNeedsNode) {
  auto device = bundled_device("pixel-watch-2");
  device.computing[0].node.reset();
  EXPECT_TRUE(mentions(validate_device(device, bundled_pack()).violations,
                       "needs a node"));
}

TEST(ValidateFactorPack, BundledPackIsValid) {
  EXPECT_TRUE(validate_factor_pack(bundled_pack()).ok());
}

TEST(ValidateFactorPack, NegativeEntryRejected) {
  auto pack = bundled_pack();
  pack.cpm["ABS"].value = -1;
  EXPECT_TRUE(mentions(validate_factor_pack(pack).violations, "ABS"));
}

TEST(ValidateFactorPack, AmbiguousSubkindRejected) {
  auto pack = bundled_pack();
  pack.fixed["ABS"] = Factor{1.0, Provenance::kUser, ""};
  EXPECT_FALSE(validate_factor_pack(pack).ok());
  EXPECT_EQ(resolve_subkind(pack, "ABS"), std::nullopt);
}

TEST(FactorPack, ResolveSubkindPicksSection) {
  auto pack = bundled_pack();
  auto led = resolve_subkind(pack, "LED");
  ASSERT_TRUE(led);
  EXPECT_EQ(led->basis, QuantityBasis::kCount);
  auto pcb = resolve_subkind(pack, "PCB-8layer");
  ASSERT_TRUE(pcb);
  EXPECT_EQ(pcb->basis, QuantityBasis::kArea);
  EXPECT_EQ(resolve_subkind(pack, "unobtainium"), std::nullopt);
}

TEST(RowLabel, DefaultsToKindName) {
  ComputingComponent c;
  c.kind = ComputingKind::kDram;
  EXPECT_EQ(row_label(c), "DRAM");
  c.label = "Memory";
  EXPECT_EQ(row_label(c), "Memory");
}

}  // namespace
}  // namespace iotcarbon
