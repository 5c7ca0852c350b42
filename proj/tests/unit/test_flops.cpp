#include <gtest/gtest.h>

#include "fixtures.h"
#include "iotcarbon/flops.h"

namespace iotcarbon {
namespace {

using testing::bundled_network;

double flops(KernelType type, std::initializer_list<int> values) {
  return kernel_flops({type, make_config(type, values)});
}

TEST(Flops, PerKernelFormulas) {
  EXPECT_EQ(flops(KernelType::kConvBnRelu, {56, 64, 128, 3, 2, 32}),
            2.0 * 28 * 28 * 64 * 128 * 9);
  EXPECT_EQ(flops(KernelType::kDwConvBnRelu, {112, 32, 3, 1, 32}),
            2.0 * 112 * 112 * 32 * 9);
  EXPECT_EQ(flops(KernelType::kFc, {1280, 1000, 32}), 2560000.0);
  EXPECT_EQ(flops(KernelType::kPool, {14, 256, 2, 2, 32}), 7.0 * 7 * 256 * 4);
  EXPECT_EQ(flops(KernelType::kRelu, {28, 96, 32}), 28.0 * 28 * 96);
  EXPECT_EQ(flops(KernelType::kConcat, {28, 64, 32, 16, 0, 32}), 28.0 * 28 * 112);
}

TEST(Flops, MacsOnlyForMultiplyKernels) {
  EXPECT_EQ(kernel_macs({KernelType::kFc, make_config(KernelType::kFc, {10, 20, 32})}),
            200.0);
  EXPECT_EQ(kernel_macs({KernelType::kRelu, make_config(KernelType::kRelu, {7, 3, 32})}),
            0.0);
}

TEST(Flops, EmptyNetworkIsZero) {
  NetworkDescription net;
  net.name = "empty";
  EXPECT_EQ(count_flops(net), 0.0);
}

TEST(Flops, InvalidNetworkThrows) {
  NetworkDescription net;
  net.name = "bad";
  net.kernels.push_back({KernelType::kRelu, make_config(KernelType::kRelu, {0, 3, 32})});
  EXPECT_THROW(count_flops(net), ValidationError);
}

TEST(Flops, BundledNetworkTotals) {
  EXPECT_NEAR(count_flops(bundled_network("mobilenetv2")), 585e6, 58.5e6);
  EXPECT_NEAR(count_macs(bundled_network("resnet18")), 1.8e9, 0.18e9);
  EXPECT_NEAR(count_macs(bundled_network("squeezenet1.1")), 352e6, 35.2e6);
  EXPECT_NEAR(count_macs(bundled_network("shufflenetv2")), 149.7e6, 14.97e6);
}

TEST(Flops, TrafficCountsWeights) {
  Kernel fc{KernelType::kFc, make_config(KernelType::kFc, {100, 10, 32})};
  EXPECT_EQ(kernel_traffic(fc), 100.0 + 10 + 1000);
}

}  // namespace
}  // namespace iotcarbon
