#pragma once

// Model bundle files. A bundle is one JSON document
//   {"schema_version": 1, "kind": "model-bundle", "content_hash": "...",
//    "models": [...]}
// where each tree is a nested record: {"f": feature, "t": threshold,
// "l": {...}, "r": {...}} for a split and {"v": energy_J} for a leaf.
// content_hash covers the models array; each model also stores its training
// fingerprint. Both are checked on load.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "iotcarbon/energy_predictor.h"

namespace iotcarbon {

nlohmann::json to_json(const ModelBundle& bundle);
/// Throws ParseError on a malformed document or a hash/fingerprint mismatch.
ModelBundle bundle_from_json(const nlohmann::json& doc);

/// Deterministic text: same bundle, same bytes.
std::string serialize_bundle(const ModelBundle& bundle);
void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& path);

}  // namespace iotcarbon
