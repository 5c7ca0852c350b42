#include "iotcarbon/config_space.h"

#include <algorithm>

namespace iotcarbon {

Dimension Dimension::single(ConfigField field, std::vector<int> values) {
  Dimension dim;
  dim.fields = {field};
  for (int v : values) dim.values.push_back({v});
  return dim;
}

ConfigSpace::ConfigSpace(KernelType type, std::vector<Dimension> dims)
    : type_(type), dims_(std::move(dims)) {
  for (const auto& dim : dims_) {
    if (dim.fields.empty()) throw Error("dimension without fields");
    for (const auto& v : dim.values)
      if (v.size() != dim.fields.size())
        throw Error("dimension value arity mismatch");
  }
}

std::uint64_t ConfigSpace::size() const {
  if (dims_.empty()) return 0;
  std::uint64_t n = 1;
  for (const auto& dim : dims_) n *= dim.values.size();
  return n;
}

std::vector<std::size_t> ConfigSpace::digits(std::uint64_t index) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t d = dims_.size(); d-- > 0;) {
    auto radix = dims_[d].values.size();
    out[d] = static_cast<std::size_t>(index % radix);
    index /= radix;
  }
  return out;
}

std::uint64_t ConfigSpace::from_digits(
    const std::vector<std::size_t>& digits) const {
  std::uint64_t index = 0;
  for (std::size_t d = 0; d < dims_.size(); ++d)
    index = index * dims_[d].values.size() + digits[d];
  return index;
}

KernelConfig ConfigSpace::at(std::uint64_t index) const {
  if (index >= size()) throw Error("config index out of range");
  auto ds = digits(index);
  KernelConfig config;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const auto& value = dims_[d].values[ds[d]];
    for (std::size_t k = 0; k < value.size(); ++k)
      config.set(dims_[d].fields[k], value[k]);
  }
  return config;
}

std::optional<std::uint64_t> ConfigSpace::index_of(
    const KernelConfig& config) const {
  if (dims_.empty()) return std::nullopt;
  std::vector<std::size_t> ds(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const auto& dim = dims_[d];
    std::vector<int> key;
    for (auto f : dim.fields) {
      auto v = config.get(f);
      if (!v) return std::nullopt;
      key.push_back(*v);
    }
    auto it = std::find(dim.values.begin(), dim.values.end(), key);
    if (it == dim.values.end()) return std::nullopt;
    ds[d] = static_cast<std::size_t>(it - dim.values.begin());
  }
  // Fields outside the space must be absent.
  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto field = static_cast<ConfigField>(i);
    if (!config.has(field)) continue;
    bool covered = false;
    for (const auto& dim : dims_)
      if (std::find(dim.fields.begin(), dim.fields.end(), field) !=
          dim.fields.end())
        covered = true;
    if (!covered) return std::nullopt;
  }
  return from_digits(ds);
}

std::vector<std::uint64_t> ConfigSpace::neighbors(std::uint64_t index) const {
  std::vector<std::uint64_t> out;
  auto ds = digits(index);
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    auto original = ds[d];
    if (original > 0) {
      ds[d] = original - 1;
      out.push_back(from_digits(ds));
    }
    if (original + 1 < dims_[d].values.size()) {
      ds[d] = original + 1;
      out.push_back(from_digits(ds));
    }
    ds[d] = original;
  }
  return out;
}

ConfigSpace ConfigSpace::with_values(ConfigField field,
                                     std::vector<int> values) const {
  auto dims = dims_;
  for (auto& dim : dims) {
    if (dim.fields.size() == 1 && dim.fields[0] == field) {
      dim = Dimension::single(field, std::move(values));
      return ConfigSpace(type_, std::move(dims));
    }
  }
  throw Error("space has no single dimension '" +
              std::string(to_string(field)) + "'");
}

const std::vector<int>& standard_hw_values() {
  static const std::vector<int> values = {5,  7,  10, 13,  14,  20,  27, 28,
                                          40, 55, 56, 80, 112, 160, 224};
  return values;
}

const std::vector<int>& standard_channel_values() {
  static const std::vector<int> values = {
      3,   16,  24,  32,  48,  58,  64,  96,  116, 128, 144,  160,
      192, 232, 256, 320, 384, 464, 512, 576, 960, 1000, 1024, 1280};
  return values;
}

namespace {

Dimension geometry(std::vector<int> kernel_sizes, std::vector<int> strides) {
  Dimension dim;
  dim.fields = {ConfigField::kKs, ConfigField::kS};
  for (int ks : kernel_sizes)
    for (int s : strides)
      if (s <= ks) dim.values.push_back({ks, s});
  return dim;
}

Dimension concat_tail() {
  Dimension dim;
  dim.fields = {ConfigField::kCi3, ConfigField::kCi4};
  dim.values.push_back({0, 0});
  for (int a : standard_channel_values()) dim.values.push_back({a, 0});
  for (int a : standard_channel_values())
    for (int b : standard_channel_values()) dim.values.push_back({a, b});
  return dim;
}

}  // namespace

ConfigSpace standard_space(KernelType type, UnitKind unit) {
  using F = ConfigField;
  const auto& hw = standard_hw_values();
  const auto& ch = standard_channel_values();
  auto bw = unit == UnitKind::kNpu ? Dimension::single(F::kBw, {4, 8, 16})
                                   : Dimension::single(F::kBw, {32});
  switch (type) {
    case KernelType::kConvBnRelu:
      return ConfigSpace(type, {Dimension::single(F::kHw, hw),
                                Dimension::single(F::kCi, ch),
                                Dimension::single(F::kCo, ch),
                                geometry({1, 3, 5, 7}, {1, 2}), bw});
    case KernelType::kDwConvBnRelu:
      return ConfigSpace(type, {Dimension::single(F::kHw, hw),
                                Dimension::single(F::kCi, ch),
                                geometry({3, 5, 7}, {1, 2}), bw});
    case KernelType::kPool:
      return ConfigSpace(type, {Dimension::single(F::kHw, hw),
                                Dimension::single(F::kCi, ch),
                                geometry({2, 3, 5, 7, 13, 14}, {1, 2}), bw});
    case KernelType::kFc:
      return ConfigSpace(type, {Dimension::single(F::kCi, ch),
                                Dimension::single(F::kCo, ch), bw});
    case KernelType::kConcat:
      return ConfigSpace(type, {Dimension::single(F::kHw, hw),
                                Dimension::single(F::kCi1, ch),
                                Dimension::single(F::kCi2, ch), concat_tail(),
                                bw});
    case KernelType::kBnRelu:
    case KernelType::kRelu:
    case KernelType::kOthers:
      return ConfigSpace(type, {Dimension::single(F::kHw, hw),
                                Dimension::single(F::kCi, ch), bw});
  }
  throw Error("unknown kernel type");
}

}  // namespace iotcarbon
