#include "iotcarbon/model_io.h"

#include <cstdio>

#include "iotcarbon/schema_io.h"

namespace iotcarbon {

namespace {

using nlohmann::json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const json& v, const std::string& where) {
  if (!v.is_string() || v.get<std::string>().size() != 16)
    throw ParseError(where + ": expected a 16-digit hex string");
  try {
    return std::stoull(v.get<std::string>(), nullptr, 16);
  } catch (const std::exception&) {
    throw ParseError(where + ": expected a 16-digit hex string");
  }
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json tree_to_json(const RegressionTree& tree, int id) {
  const auto& n = tree.nodes.at(id);
  if (n.is_leaf()) return {{"v", n.value}};
  return {{"f", n.feature},
          {"t", n.threshold},
          {"l", tree_to_json(tree, n.left)},
          {"r", tree_to_json(tree, n.right)}};
}

int tree_from_json(const json& j, RegressionTree& tree, int n_features,
                   const std::string& where, int depth) {
  if (depth > 4096) throw ParseError(where + ": tree too deep");
  if (!j.is_object()) throw ParseError(where + ": expected a tree node");
  int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (j.contains("v")) {
    if (j.size() != 1 || !j["v"].is_number())
      throw ParseError(where + ": malformed leaf");
    double v = j["v"].get<double>();
    if (!(v > 0.0)) throw ParseError(where + ": leaf energy must be positive");
    tree.nodes[id].value = v;
    return id;
  }
  for (const char* key : {"f", "t", "l", "r"})
    if (!j.contains(key)) throw ParseError(where + ": split lacks '" + key + "'");
  if (j.size() != 4 || !j["f"].is_number_integer() || !j["t"].is_number())
    throw ParseError(where + ": malformed split");
  int f = j["f"].get<int>();
  if (f < 0 || f >= n_features)
    throw ParseError(where + ": split feature " + std::to_string(f) +
                     " out of range");
  double t = j["t"].get<double>();
  int left = tree_from_json(j["l"], tree, n_features, where, depth + 1);
  int right = tree_from_json(j["r"], tree, n_features, where, depth + 1);
  auto& node = tree.nodes[id];
  node.feature = f;
  node.threshold = t;
  node.left = left;
  node.right = right;
  return id;
}

json hp_to_json(const ForestHyperparams& hp) {
  return {{"n_trees", hp.n_trees},
          {"max_depth", hp.max_depth ? json(*hp.max_depth) : json(nullptr)},
          {"min_samples_leaf", hp.min_samples_leaf},
          {"features_per_split", hp.features_per_split},
          {"bootstrap", hp.bootstrap},
          {"seed", hp.seed},
          {"monotone", hp.monotone},
          {"random_split_points", hp.random_split_points}};
}

ForestHyperparams hp_from_json(const json& j, const std::string& where) {
  try {
    ForestHyperparams hp;
    hp.n_trees = j.at("n_trees").get<int>();
    if (!j.at("max_depth").is_null()) hp.max_depth = j.at("max_depth").get<int>();
    hp.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    hp.features_per_split = j.at("features_per_split").get<double>();
    hp.bootstrap = j.at("bootstrap").get<bool>();
    hp.seed = j.at("seed").get<std::uint64_t>();
    hp.monotone = j.at("monotone").get<bool>();
    hp.random_split_points = j.at("random_split_points").get<bool>();
    hp.validate();
    return hp;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad hyperparameters (" + e.what() + ")");
  }
}

json model_to_json(const KernelEnergyModel& m) {
  json hull = json::array();
  for (const auto& r : m.hull) hull.push_back({r.min, r.max});
  json trees = json::array();
  for (const auto& t : m.forest.trees()) trees.push_back(tree_to_json(t, 0));
  return {{"kernel_type", to_string(m.kernel_type)},
          {"unit", to_string(m.unit.kind)},
          {"soc", m.unit.soc},
          {"regime", regime_of(m.unit.kind)},
          {"layout", m.layout},
          {"monotone", m.forest.monotone()},
          {"hull", hull},
          {"hyperparams", hp_to_json(m.hyperparams)},
          {"dataset_hash", hex64(m.dataset_hash)},
          {"n_samples", m.n_samples},
          {"fingerprint", m.fingerprint()},
          {"trees", trees}};
}

KernelEnergyModel model_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  KernelEnergyModel m;
  try {
    m.kernel_type = parse_kernel_type(j.at("kernel_type").get<std::string>());
    m.unit.kind = parse_unit_kind(j.at("unit").get<std::string>());
    m.unit.soc = j.at("soc").get<std::string>();
    if (j.at("regime").get<std::string>() != regime_of(m.unit.kind))
      throw ParseError(where + ": regime does not match unit");
    m.layout = j.at("layout").get<std::vector<std::string>>();
    for (const auto& r : j.at("hull"))
      m.hull.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
    m.dataset_hash = parse_hex64(j.at("dataset_hash"), where + ".dataset_hash");
    m.n_samples = j.at("n_samples").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
  if (m.layout != feature_layout(m.kernel_type))
    throw ParseError(where + ": feature layout does not match " +
                     std::string(to_string(m.kernel_type)));
  if (m.hull.size() != m.layout.size())
    throw ParseError(where + ": hull has the wrong number of features");
  if (!j.contains("hyperparams")) throw ParseError(where + ": missing hyperparams");
  m.hyperparams = hp_from_json(j["hyperparams"], where + ".hyperparams");

  std::vector<int> monotone;
  try {
    monotone = j.at("monotone").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ParseError(where + ".monotone: " + e.what());
  }
  if (!monotone.empty() && monotone != monotone_directions(m.kernel_type))
    throw ParseError(where + ": monotone directions do not match the layout");

  if (!j.contains("trees") || !j["trees"].is_array() || j["trees"].empty())
    throw ParseError(where + ": missing trees");
  std::vector<RegressionTree> trees;
  int n_features = static_cast<int>(m.layout.size());
  for (std::size_t t = 0; t < j["trees"].size(); ++t) {
    RegressionTree tree;
    tree_from_json(j["trees"][t], tree, n_features,
                   where + ".trees[" + std::to_string(t) + "]", 0);
    trees.push_back(std::move(tree));
  }
  m.forest = Forest(std::move(trees), std::move(monotone));

  if (!j.contains("fingerprint") || !j["fingerprint"].is_string())
    throw ParseError(where + ": missing fingerprint");
  if (j["fingerprint"].get<std::string>() != m.fingerprint())
    throw ParseError(where + ": fingerprint mismatch (stored " +
                     j["fingerprint"].get<std::string>() + ", computed " +
                     m.fingerprint() + ")");
  return m;
}

}  // namespace

json to_json(const ModelBundle& bundle) {
  json models = json::array();
  for (const auto& [key, model] : bundle.models)
    models.push_back(model_to_json(model));
  return {{"schema_version", kSchemaVersion},
          {"kind", "model-bundle"},
          {"content_hash", hex64(fnv1a(models.dump()))},
          {"models", models}};
}

ModelBundle bundle_from_json(const json& doc) {
  check_header(doc, "model-bundle");
  if (!doc.contains("models") || !doc["models"].is_array())
    throw ParseError("model bundle: missing models array");
  if (!doc.contains("content_hash"))
    throw ParseError("model bundle: missing content_hash");
  auto stored = parse_hex64(doc["content_hash"], "model bundle.content_hash");
  if (stored != fnv1a(doc["models"].dump()))
    throw ParseError("model bundle: content hash mismatch, file was modified");
  ModelBundle bundle;
  for (std::size_t i = 0; i < doc["models"].size(); ++i) {
    auto m = model_from_json(doc["models"][i],
                             "models[" + std::to_string(i) + "]");
    if (bundle.contains(m.kernel_type, m.unit))
      throw ParseError("models[" + std::to_string(i) + "]: duplicate model for " +
                       std::string(to_string(m.kernel_type)) + " on " +
                       describe(m.unit));
    bundle.add(std::move(m));
  }
  return bundle;
}

std::string serialize_bundle(const ModelBundle& bundle) {
  return to_json(bundle).dump() + "\n";
}

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  write_text_file(path, serialize_bundle(bundle));
}

ModelBundle load_bundle(const std::filesystem::path& path) {
  try {
    return bundle_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace iotcarbon
