#include "iotcarbon/flops.h"

namespace iotcarbon {

namespace {

struct Dims {
  double hw, ci, co, ks, s;
};

Dims dims_of(const KernelConfig& c) {
  return {double(c.hw().value_or(1)), double(c.c_i().value_or(0)),
          double(c.c_o().value_or(0)), double(c.ks().value_or(1)),
          double(c.s().value_or(1))};
}

double concat_channels(const KernelConfig& c) {
  double sum = 0;
  for (auto f : {ConfigField::kCi1, ConfigField::kCi2, ConfigField::kCi3,
                 ConfigField::kCi4})
    sum += c.get(f).value_or(0);
  return sum;
}

}  // namespace

double kernel_flops(const Kernel& kernel) {
  auto d = dims_of(kernel.config);
  double area = d.hw * d.hw;
  double window = d.ks * d.ks / (d.s * d.s);
  switch (kernel.type) {
    case KernelType::kConvBnRelu:
      return 2.0 * area * d.ci * d.co * window;
    case KernelType::kDwConvBnRelu:
      return 2.0 * area * d.ci * window;
    case KernelType::kFc:
      return 2.0 * d.ci * d.co;
    case KernelType::kPool:
      return area * d.ci * window;
    case KernelType::kConcat:
      return area * concat_channels(kernel.config);
    case KernelType::kBnRelu:
    case KernelType::kRelu:
    case KernelType::kOthers:
      return area * d.ci;
  }
  return 0.0;
}

double kernel_macs(const Kernel& kernel) {
  switch (kernel.type) {
    case KernelType::kConvBnRelu:
    case KernelType::kDwConvBnRelu:
    case KernelType::kFc:
      return kernel_flops(kernel) / 2.0;
    default:
      return 0.0;
  }
}

double kernel_traffic(const Kernel& kernel) {
  auto d = dims_of(kernel.config);
  double in = d.hw * d.hw * d.ci;
  double out_area = (d.hw / d.s) * (d.hw / d.s);
  switch (kernel.type) {
    case KernelType::kConvBnRelu:
      return in + out_area * d.co + d.ci * d.co * d.ks * d.ks;
    case KernelType::kDwConvBnRelu:
      return in + out_area * d.ci + d.ci * d.ks * d.ks;
    case KernelType::kFc:
      return d.ci + d.co + d.ci * d.co;
    case KernelType::kPool:
      return in + out_area * d.ci;
    case KernelType::kConcat:
    case KernelType::kBnRelu:
    case KernelType::kRelu:
    case KernelType::kOthers:
      return 2.0 * kernel_flops(kernel);
  }
  return 0.0;
}

double count_flops(const NetworkDescription& net) {
  auto report = validate_network(net);
  if (!report.ok()) throw ValidationError(report.violations);
  double total = 0.0;
  for (const auto& k : net.kernels) total += kernel_flops(k);
  return total;
}

double count_macs(const NetworkDescription& net) {
  auto report = validate_network(net);
  if (!report.ok()) throw ValidationError(report.violations);
  double total = 0.0;
  for (const auto& k : net.kernels) total += kernel_macs(k);
  return total;
}

}  // namespace iotcarbon
