#pragma once

// Versioned JSON schemas for the authored input files. Every document
// carries "schema_version" (currently 1) and a "kind" tag. Unknown fields
// are errors in strict mode and warnings otherwise.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "iotcarbon/core.h"
#include "iotcarbon/operational.h"

namespace iotcarbon {

inline constexpr int kSchemaVersion = 1;

struct ReadOptions {
  bool strict = false;
  Diagnostics* diag = nullptr;
};

DeviceDescription device_from_json(const nlohmann::json& doc,
                                   const ReadOptions& options = {});
nlohmann::json to_json(const DeviceDescription& device);

NetworkDescription network_from_json(const nlohmann::json& doc,
                                     const ReadOptions& options = {});
nlohmann::json to_json(const NetworkDescription& net);

FactorPack factor_pack_from_json(const nlohmann::json& doc,
                                 const ReadOptions& options = {});
nlohmann::json to_json(const FactorPack& pack);

UsageProfile usage_from_json(const nlohmann::json& doc,
                             const ReadOptions& options = {});
nlohmann::json to_json(const UsageProfile& usage);

nlohmann::json kernel_to_json(const Kernel& kernel);
Kernel kernel_from_json(const nlohmann::json& doc, const std::string& where,
                        const ReadOptions& options = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
/// Parses a JSON file; syntax errors become ParseError with a line number.
nlohmann::json read_json_file(const std::filesystem::path& path);

DeviceDescription load_device(const std::filesystem::path& path,
                              const ReadOptions& options = {});
NetworkDescription load_network(const std::filesystem::path& path,
                                const ReadOptions& options = {});
FactorPack load_factor_pack(const std::filesystem::path& path,
                            const ReadOptions& options = {});
UsageProfile load_usage(const std::filesystem::path& path,
                        const ReadOptions& options = {});

/// Checks schema_version and kind; used by every *_from_json.
void check_header(const nlohmann::json& doc, std::string_view kind);

}  // namespace iotcarbon
