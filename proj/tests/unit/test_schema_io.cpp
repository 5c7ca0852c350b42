#include <gtest/gtest.h>

#include "fixtures.h"
#include "iotcarbon/schema_io.h"

namespace iotcarbon {
namespace {

using nlohmann::json;
using testing::bundled_device;
using testing::bundled_network;
using testing::bundled_pack;
using testing::bundled_usage;
using testing::TempDir;

TEST(SchemaIo, DeviceRoundTrip) {
  for (auto stem : {"pixel-watch-2", "chromecast-hd", "pixel-6-pro"}) {
    auto device = bundled_device(stem);
    EXPECT_EQ(device_from_json(to_json(device)), device) << stem;
  }
}

TEST(SchemaIo, NetworkRoundTrip) {
  for (auto stem : {"resnet18", "mobilenetv2", "shufflenetv2", "squeezenet1.1"}) {
    auto net = bundled_network(stem);
    EXPECT_EQ(network_from_json(to_json(net)), net) << stem;
  }
}

TEST(SchemaIo, FactorPackRoundTrip) {
  auto pack = bundled_pack();
  EXPECT_EQ(factor_pack_from_json(to_json(pack)), pack);
}

TEST(SchemaIo, UsageRoundTrip) {
  auto usage = bundled_usage("camera-10fps");
  EXPECT_EQ(usage_from_json(to_json(usage)), usage);
  EXPECT_DOUBLE_EQ(usage.inferences_per_day, 864000);
}

TEST(SchemaIo, AreasConvertFromSquareMillimetres) {
  auto watch = bundled_device("pixel-watch-2");
  ASSERT_TRUE(watch.computing[0].area_cm2);
  EXPECT_DOUBLE_EQ(*watch.computing[0].area_cm2, 0.9);
}

TEST(SchemaIo, WrongKindRejected) {
  auto doc = to_json(bundled_usage("hourly"));
  EXPECT_THROW(device_from_json(doc), ParseError);
}

TEST(SchemaIo, WrongVersionRejected) {
  auto doc = to_json(bundled_usage("hourly"));
  doc["schema_version"] = 99;
  EXPECT_THROW(usage_from_json(doc), ParseError);
}

TEST(SchemaIo, UnknownFieldWarnsOrFails) {
  auto doc = to_json(bundled_usage("hourly"));
  doc["colour"] = "blue";
  Diagnostics diag;
  EXPECT_NO_THROW(usage_from_json(doc, {false, &diag}));
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings[0].find("colour"), std::string::npos);
  EXPECT_THROW(usage_from_json(doc, {true, nullptr}), ParseError);
}

TEST(SchemaIo, UnknownKernelTagRejected) {
  json k = {{"type", "conv"}, {"hw", 7}, {"c_i", 3}, {"bw", 32}};
  EXPECT_THROW(kernel_from_json(k, "kernel[0]"), ParseError);
}

TEST(SchemaIo, KernelRoundTrip) {
  Kernel k{KernelType::kConvBnRelu,
           make_config(KernelType::kConvBnRelu, {56, 64, 64, 3, 1, 8})};
  EXPECT_EQ(kernel_from_json(kernel_to_json(k), "k"), k);
}

TEST(SchemaIo, SyntaxErrorCarriesLine) {
  TempDir dir("schema");
  write_text_file(dir / "bad.json", "{\n  \"a\": 1,\n  oops\n}\n");
  try {
    read_json_file(dir / "bad.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SchemaIo, MissingFileIsAnError) {
  EXPECT_THROW(load_device("/nonexistent/device.json"), Error);
}

TEST(SchemaIo, NetworkMetadataCarriedThrough) {
  auto net = bundled_network("resnet18");
  ASSERT_TRUE(net.metadata.declared_flops);
  EXPECT_DOUBLE_EQ(*net.metadata.declared_flops, 1.8e9);
  EXPECT_FALSE(net.metadata.top1_accuracy.empty());
}

}  // namespace
}  // namespace iotcarbon
