#pragma once

#include "iotcarbon/core.h"

namespace iotcarbon {

/// Arithmetic work of one kernel in FLOPs (1 MAC = 2 FLOPs):
///   conv    2 HW^2 Ci Co KS^2 / S^2
///   dwconv  2 HW^2 Ci KS^2 / S^2
///   fc      2 Ci Co
///   pool    HW^2 Ci KS^2 / S^2
///   concat  HW^2 (Ci1 + Ci2 + Ci3 + Ci4)
///   others  HW^2 Ci   (bn+relu, relu, others)
double kernel_flops(const Kernel& kernel);

/// Multiply-accumulates; only conv, dwconv and fc carry MACs.
double kernel_macs(const Kernel& kernel);

/// Elements moved: input + output + weights.
double kernel_traffic(const Kernel& kernel);

/// Sums over every kernel. Throws ValidationError on an invalid network.
double count_flops(const NetworkDescription& net);
double count_macs(const NetworkDescription& net);

}  // namespace iotcarbon
