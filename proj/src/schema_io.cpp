#include "iotcarbon/schema_io.h"

#include <fstream>
#include <sstream>

#include "json_reader.h"

namespace iotcarbon {

using nlohmann::json;
using detail::ObjectReader;

void check_header(const json& doc, std::string_view kind) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (!doc.contains("schema_version"))
    throw ParseError("missing mandatory field 'schema_version'");
  const auto& version = doc.at("schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw ParseError("unsupported schema_version " + version.dump() +
                     " (expected " + std::to_string(kSchemaVersion) + ")");
  if (!doc.contains("kind") || !doc.at("kind").is_string() ||
      doc.at("kind").get<std::string>() != kind)
    throw ParseError("expected a '" + std::string(kind) + "' document");
}

// ---------------------------------------------------------------------------
// Kernels and networks

json kernel_to_json(const Kernel& kernel) {
  json out = json::object();
  out["type"] = std::string(to_string(kernel.type));
  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto field = static_cast<ConfigField>(i);
    if (auto value = kernel.config.get(field))
      out[std::string(to_string(field))] = *value;
  }
  return out;
}

Kernel kernel_from_json(const json& doc, const std::string& where,
                        const ReadOptions& options) {
  ObjectReader r(doc, where, options);
  Kernel kernel;
  kernel.type = parse_kernel_type(r.required<std::string>("type"));
  for (std::size_t i = 0; i < kNumConfigFields; ++i) {
    auto field = static_cast<ConfigField>(i);
    kernel.config.set(field, r.optional<int>(std::string(to_string(field))));
  }
  r.finish();
  return kernel;
}

json to_json(const NetworkDescription& net) {
  json meta = json::object();
  if (net.metadata.declared_flops)
    meta["declared_flops"] = *net.metadata.declared_flops;
  if (!net.metadata.top1_accuracy.empty())
    meta["top1_accuracy"] = net.metadata.top1_accuracy;
  if (!net.metadata.notes.empty()) meta["notes"] = net.metadata.notes;
  json kernels = json::array();
  for (const auto& k : net.kernels) kernels.push_back(kernel_to_json(k));
  return {{"schema_version", kSchemaVersion},
          {"kind", "network"},
          {"name", net.name},
          {"metadata", meta},
          {"kernels", kernels}};
}

NetworkDescription network_from_json(const json& doc,
                                     const ReadOptions& options) {
  check_header(doc, "network");
  ObjectReader r(doc, "network", options);
  r.raw("schema_version");
  r.raw("kind");
  NetworkDescription net;
  net.name = r.required<std::string>("name");
  if (r.has("metadata")) {
    ObjectReader m(r.raw("metadata"), "network.metadata", options);
    net.metadata.declared_flops = m.optional<double>("declared_flops");
    net.metadata.top1_accuracy =
        m.value_or<std::map<std::string, double>>("top1_accuracy", {});
    net.metadata.notes = m.value_or<std::string>("notes", "");
    m.finish();
  }
  const auto& kernels = r.raw("kernels");
  if (!kernels.is_array()) throw ParseError("network.kernels must be an array");
  for (std::size_t i = 0; i < kernels.size(); ++i)
    net.kernels.push_back(kernel_from_json(
        kernels[i], "network.kernels[" + std::to_string(i) + "]", options));
  r.finish();
  return net;
}

// ---------------------------------------------------------------------------
// Devices

namespace {

std::optional<double> read_area(ObjectReader& r) {
  auto cm2 = r.optional<double>("area_cm2");
  auto mm2 = r.optional<double>("area_mm2");
  if (cm2 && mm2) throw ParseError("give either area_cm2 or area_mm2, not both");
  if (mm2) return *mm2 / 100.0;
  return cm2;
}

}  // namespace

json to_json(const DeviceDescription& device) {
  json computing = json::array();
  for (const auto& c : device.computing) {
    json item = {{"kind", std::string(to_string(c.kind))}};
    if (!c.label.empty()) item["label"] = c.label;
    if (c.area_cm2) item["area_cm2"] = *c.area_cm2;
    if (c.node) item["node"] = *c.node;
    if (c.capacity_gb) item["capacity_gb"] = *c.capacity_gb;
    item["time_share"] = c.time_share;
    if (!c.note.empty()) item["note"] = c.note;
    computing.push_back(std::move(item));
  }
  json non_computing = json::array();
  for (const auto& c : device.non_computing) {
    json item = {{"kind", std::string(to_string(c.kind))},
                 {"subkind", c.subkind}};
    switch (c.quantity.basis) {
      case QuantityBasis::kMass:
        item["mass_g"] = c.quantity.value;
        break;
      case QuantityBasis::kArea:
        item["area_cm2"] = c.quantity.value;
        break;
      case QuantityBasis::kCount:
        item["count"] = c.quantity.value;
        break;
    }
    if (!c.label.empty()) item["label"] = c.label;
    item["time_share"] = c.time_share;
    if (!c.note.empty()) item["note"] = c.note;
    non_computing.push_back(std::move(item));
  }
  json transport = json::array();
  for (const auto& leg : device.transport)
    transport.push_back({{"mode", leg.mode},
                         {"mass_g", leg.mass_g},
                         {"distance_km", leg.distance_km}});
  json out = {{"schema_version", kSchemaVersion},
              {"kind", "device"},
              {"name", device.name},
              {"lifetime_years", device.lifetime_years},
              {"computing", computing},
              {"non_computing", non_computing},
              {"transport", transport}};
  if (!device.notes.empty()) out["notes"] = device.notes;
  return out;
}

DeviceDescription device_from_json(const json& doc,
                                   const ReadOptions& options) {
  check_header(doc, "device");
  ObjectReader r(doc, "device", options);
  r.raw("schema_version");
  r.raw("kind");
  DeviceDescription device;
  device.name = r.required<std::string>("name");
  device.lifetime_years = r.value_or<double>("lifetime_years", 3.0);
  device.notes = r.value_or<std::string>("notes", "");

  if (r.has("computing")) {
    const auto& list = r.raw("computing");
    if (!list.is_array()) throw ParseError("device.computing must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      ObjectReader c(list[i], "device.computing[" + std::to_string(i) + "]",
                     options);
      ComputingComponent item;
      item.kind = parse_computing_kind(c.required<std::string>("kind"));
      item.label = c.value_or<std::string>("label", "");
      item.area_cm2 = read_area(c);
      item.node = c.optional<std::string>("node");
      item.capacity_gb = c.optional<double>("capacity_gb");
      item.time_share = c.value_or<double>("time_share", 1.0);
      item.note = c.value_or<std::string>("note", "");
      c.finish();
      device.computing.push_back(std::move(item));
    }
  }

  if (r.has("non_computing")) {
    const auto& list = r.raw("non_computing");
    if (!list.is_array())
      throw ParseError("device.non_computing must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto where = "device.non_computing[" + std::to_string(i) + "]";
      ObjectReader c(list[i], where, options);
      NonComputingComponent item;
      item.kind = parse_non_computing_kind(c.required<std::string>("kind"));
      item.subkind = c.required<std::string>("subkind");
      auto mass = c.optional<double>("mass_g");
      auto area = read_area(c);
      auto count = c.optional<double>("count");
      int given = int(mass.has_value()) + int(area.has_value()) +
                  int(count.has_value());
      if (given != 1)
        throw ParseError(where +
                         ": exactly one of mass_g, area_cm2/area_mm2, count");
      if (mass) item.quantity = {QuantityBasis::kMass, *mass};
      if (area) item.quantity = {QuantityBasis::kArea, *area};
      if (count) item.quantity = {QuantityBasis::kCount, *count};
      item.label = c.value_or<std::string>("label", "");
      item.time_share = c.value_or<double>("time_share", 1.0);
      item.note = c.value_or<std::string>("note", "");
      c.finish();
      device.non_computing.push_back(std::move(item));
    }
  }

  if (r.has("transport")) {
    const auto& list = r.raw("transport");
    if (!list.is_array()) throw ParseError("device.transport must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      ObjectReader t(list[i], "device.transport[" + std::to_string(i) + "]",
                     options);
      TransportLeg leg;
      leg.mode = t.required<std::string>("mode");
      leg.mass_g = t.required<double>("mass_g");
      leg.distance_km = t.required<double>("distance_km");
      t.finish();
      device.transport.push_back(std::move(leg));
    }
  }
  r.finish();
  return device;
}

// ---------------------------------------------------------------------------
// Factor packs

namespace {

constexpr std::array<std::pair<const char*, FactorMap FactorPack::*>, 8>
    kPackSections = {{
        {"ci", &FactorPack::ci},
        {"cpa_logic", &FactorPack::cpa_logic},
        {"cpc", &FactorPack::cpc},
        {"cpm", &FactorPack::cpm},
        {"cpd", &FactorPack::cpd},
        {"fixed", &FactorPack::fixed},
        {"cpa_other", &FactorPack::cpa_other},
        {"memory_node_scaling", &FactorPack::memory_node_scaling},
    }};

}  // namespace

json to_json(const FactorPack& pack) {
  json out = {{"schema_version", kSchemaVersion},
              {"kind", "factor_pack"},
              {"name", pack.name}};
  for (const auto& [name, member] : kPackSections) {
    json section = json::object();
    for (const auto& [key, factor] : pack.*member) {
      json entry = {{"value", factor.value},
                    {"provenance", std::string(to_string(factor.provenance))}};
      if (!factor.note.empty()) entry["note"] = factor.note;
      section[key] = std::move(entry);
    }
    out[name] = std::move(section);
  }
  return out;
}

FactorPack factor_pack_from_json(const json& doc, const ReadOptions& options) {
  check_header(doc, "factor_pack");
  ObjectReader r(doc, "factor_pack", options);
  r.raw("schema_version");
  r.raw("kind");
  FactorPack pack;
  pack.name = r.value_or<std::string>("name", "");
  for (const auto& [name, member] : kPackSections) {
    if (!r.has(name)) continue;
    const auto& section = r.raw(name);
    if (!section.is_object())
      throw ParseError(std::string("factor_pack.") + name +
                       " must be an object");
    for (const auto& [key, entry] : section.items()) {
      auto where = std::string("factor_pack.") + name + "." + key;
      Factor factor;
      if (entry.is_number()) {
        factor.value = entry.get<double>();
        factor.provenance = Provenance::kUser;
      } else {
        ObjectReader e(entry, where, options);
        factor.value = e.required<double>("value");
        factor.provenance = parse_provenance(
            e.value_or<std::string>("provenance", "user"));
        factor.note = e.value_or<std::string>("note", "");
        e.finish();
      }
      if (!(factor.value >= 0.0))
        throw ParseError(where + ": factor must be non-negative");
      (pack.*member)[key] = std::move(factor);
    }
  }
  r.finish();
  return pack;
}

// ---------------------------------------------------------------------------
// Usage

json to_json(const UsageProfile& usage) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "usage"},
          {"inferences_per_day", usage.inferences_per_day},
          {"active_years", usage.active_years},
          {"region", usage.region}};
}

UsageProfile usage_from_json(const json& doc, const ReadOptions& options) {
  check_header(doc, "usage");
  ObjectReader r(doc, "usage", options);
  r.raw("schema_version");
  r.raw("kind");
  UsageProfile usage;
  usage.inferences_per_day = r.required<double>("inferences_per_day");
  usage.active_years = r.value_or<double>("active_years", 3.0);
  usage.region = r.value_or<std::string>("region", "UK");
  r.value_or<std::string>("notes", "");
  r.finish();
  return usage;
}

// ---------------------------------------------------------------------------
// Files

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

json read_json_file(const std::filesystem::path& path) {
  auto text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError(path.string() + ": " + e.what(), line);
  }
}

DeviceDescription load_device(const std::filesystem::path& path,
                              const ReadOptions& options) {
  return device_from_json(read_json_file(path), options);
}

NetworkDescription load_network(const std::filesystem::path& path,
                                const ReadOptions& options) {
  return network_from_json(read_json_file(path), options);
}

FactorPack load_factor_pack(const std::filesystem::path& path,
                            const ReadOptions& options) {
  return factor_pack_from_json(read_json_file(path), options);
}

UsageProfile load_usage(const std::filesystem::path& path,
                        const ReadOptions& options) {
  return usage_from_json(read_json_file(path), options);
}

}  // namespace iotcarbon
