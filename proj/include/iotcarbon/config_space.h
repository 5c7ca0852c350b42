#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iotcarbon/core.h"

namespace iotcarbon {

/// One axis of a configuration space. Usually a single field, but an axis
/// may bind several fields jointly (e.g. legal (ks, s) pairs).
struct Dimension {
  std::vector<ConfigField> fields;
  std::vector<std::vector<int>> values;  // each entry has fields.size() ints

  static Dimension single(ConfigField field, std::vector<int> values);
};

/// Cartesian product of dimensions for one kernel type. Enumeration is
/// mixed-radix with the last dimension varying fastest.
class ConfigSpace {
 public:
  ConfigSpace() = default;
  ConfigSpace(KernelType type, std::vector<Dimension> dims);

  KernelType type() const { return type_; }
  const std::vector<Dimension>& dimensions() const { return dims_; }

  std::uint64_t size() const;
  KernelConfig at(std::uint64_t index) const;
  /// Index of a member config, or nullopt when it is not in the space.
  std::optional<std::uint64_t> index_of(const KernelConfig& config) const;
  bool contains(const KernelConfig& config) const {
    return index_of(config).has_value();
  }

  /// Indices one step away along a single dimension.
  std::vector<std::uint64_t> neighbors(std::uint64_t index) const;

  /// Copy with one single-field dimension restricted to the given values.
  ConfigSpace with_values(ConfigField field, std::vector<int> values) const;

 private:
  std::vector<std::size_t> digits(std::uint64_t index) const;
  std::uint64_t from_digits(const std::vector<std::size_t>& digits) const;

  KernelType type_ = KernelType::kOthers;
  std::vector<Dimension> dims_;
};

/// Spatial sizes and channel counts found in common mobile networks.
const std::vector<int>& standard_hw_values();
const std::vector<int>& standard_channel_values();

/// The bundled configuration space of `type` on `unit`: NPUs sweep
/// bw {4, 8, 16}; CPU and GPU run bw 32.
ConfigSpace standard_space(KernelType type, UnitKind unit);

}  // namespace iotcarbon
