#pragma once

// Paths and loaders for the bundled data directory.

#include <filesystem>
#include <string>

#include "iotcarbon/schema_io.h"

namespace iotcarbon::testing {

inline std::filesystem::path data_path() { return IOTCARBON_DATA_DIR; }

inline FactorPack bundled_pack() {
  return load_factor_pack(data_path() / "factors" / "calibrated.json");
}

inline DeviceDescription bundled_device(const std::string& stem) {
  return load_device(data_path() / "devices" / (stem + ".json"));
}

inline NetworkDescription bundled_network(const std::string& stem) {
  return load_network(data_path() / "networks" / (stem + ".json"));
}

inline UsageProfile bundled_usage(const std::string& stem) {
  return load_usage(data_path() / "usage" / (stem + ".json"));
}

/// Fresh scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("iotcarbon-" + tag + "-" + std::to_string(counter()++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
  std::filesystem::path path_;
};

}  // namespace iotcarbon::testing
