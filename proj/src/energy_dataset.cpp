#include "iotcarbon/energy_dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "iotcarbon/rng.h"
#include "iotcarbon/schema_io.h"
#include "iotcarbon/text.h"

namespace iotcarbon {

using nlohmann::json;

std::string_view to_string(DataSource source) {
  return source == DataSource::kSynthetic ? "synthetic" : "measured";
}

DataSource parse_data_source(std::string_view text) {
  if (text == "synthetic") return DataSource::kSynthetic;
  if (text == "measured") return DataSource::kMeasured;
  throw ParseError("unknown data source '" + std::string(text) + "'");
}

BenchmarkDataset BenchmarkDataset::filter(KernelType type,
                                          const ExecutionUnit& unit) const {
  BenchmarkDataset out;
  out.source = source;
  out.generator_seed = generator_seed;
  for (const auto& s : samples)
    if (s.kernel_type == type && s.unit == unit) out.samples.push_back(s);
  return out;
}

std::vector<std::pair<KernelType, ExecutionUnit>> BenchmarkDataset::strata()
    const {
  std::vector<std::pair<KernelType, ExecutionUnit>> out;
  for (const auto& s : samples) {
    std::pair key{s.kernel_type, s.unit};
    if (std::find(out.begin(), out.end(), key) == out.end())
      out.push_back(key);
  }
  return out;
}

namespace {

struct Fnv {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* data, std::size_t n) {
    auto p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  }
  void text(std::string_view s) {
    bytes(s.data(), s.size());
    bytes("\0", 1);
  }
  void integer(std::int64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
};

}  // namespace

std::uint64_t dataset_hash(const BenchmarkDataset& ds) {
  Fnv fnv;
  for (const auto& s : ds.samples) {
    fnv.text(to_string(s.kernel_type));
    fnv.text(to_string(s.unit.kind));
    fnv.text(s.unit.soc);
    for (std::size_t i = 0; i < kNumConfigFields; ++i)
      fnv.integer(s.config.get(static_cast<ConfigField>(i)).value_or(-1));
    fnv.text(format_number(s.energy_j));
    fnv.integer(s.runs);
  }
  return fnv.h;
}

std::vector<std::string> validate_sample(const EnergySample& sample) {
  auto out = validate_kernel(sample.kernel_type, sample.config);
  int bw = sample.config.bw();
  if (sample.config.has(ConfigField::kBw) &&
      !bitwidth_allowed(sample.unit.kind, bw))
    out.push_back("bitwidth " + std::to_string(bw) + " is not supported on " +
                  std::string(to_string(sample.unit.kind)));
  if (!(sample.energy_j > 0.0) || !std::isfinite(sample.energy_j))
    out.push_back("energy must be positive and finite, got " +
                  format_number(sample.energy_j * 1e3) + " mJ");
  if (sample.runs < 1) out.push_back("runs must be at least 1");
  return out;
}

void merge_duplicates(BenchmarkDataset& ds, Diagnostics* diag) {
  using Key = std::tuple<KernelType, ExecutionUnit, KernelConfig>;
  std::map<Key, std::size_t> first;
  std::vector<EnergySample> merged;
  std::vector<double> weighted;  // sum of energy x runs
  for (const auto& s : ds.samples) {
    Key key{s.kernel_type, s.unit, s.config};
    auto [it, fresh] = first.emplace(key, merged.size());
    if (fresh) {
      merged.push_back(s);
      weighted.push_back(s.energy_j * s.runs);
      continue;
    }
    auto& m = merged[it->second];
    weighted[it->second] += s.energy_j * s.runs;
    m.runs += s.runs;
    if (diag)
      diag->warn("duplicate sample " + describe(s.kernel_type, s.config) +
                 " on " + describe(s.unit) + " averaged");
  }
  for (std::size_t i = 0; i < merged.size(); ++i)
    merged[i].energy_j = weighted[i] / merged[i].runs;
  ds.samples = std::move(merged);
}

// ---------------------------------------------------------------------------
// JSON lines

BenchmarkDataset parse_benchmark_jsonl(const std::string& text,
                                       Diagnostics* diag) {
  BenchmarkDataset ds;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), lineno);
    }
    try {
      if (!header_seen) {
        check_header(record, "benchmark");
        if (record.contains("source"))
          ds.source = parse_data_source(record.at("source").get<std::string>());
        if (record.contains("generator_seed") &&
            !record.at("generator_seed").is_null())
          ds.generator_seed = record.at("generator_seed").get<std::uint64_t>();
        header_seen = true;
        continue;
      }
      if (!record.is_object()) throw ParseError("record must be an object");
      EnergySample s;
      s.kernel_type =
          parse_kernel_type(record.at("kernel_type").get<std::string>());
      s.unit.kind = parse_unit_kind(record.at("unit").get<std::string>());
      if (record.contains("soc")) s.unit.soc = record.at("soc").get<std::string>();
      for (std::size_t i = 0; i < kNumConfigFields; ++i) {
        auto field = static_cast<ConfigField>(i);
        auto name = std::string(to_string(field));
        if (record.contains(name) && !record.at(name).is_null())
          s.config.set(field, record.at(name).get<int>());
      }
      s.energy_j = record.at("energy_mJ").get<double>() * 1e-3;
      s.runs = record.contains("runs") ? record.at("runs").get<int>() : 1;
      for (const auto& [key, _] : record.items()) {
        bool known = key == "kernel_type" || key == "unit" || key == "soc" ||
                     key == "energy_mJ" || key == "runs" ||
                     parse_config_field(key).has_value();
        if (!known && diag)
          diag->warn("line " + std::to_string(lineno) + ": unknown field '" +
                     key + "'");
      }
      auto problems = validate_sample(s);
      if (!problems.empty()) throw ParseError(problems.front());
      ds.samples.push_back(std::move(s));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), lineno);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad record: ") + e.what(), lineno);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!header_seen && diag) diag->warn("benchmark file is empty");
  merge_duplicates(ds, diag);
  return ds;
}

std::string to_jsonl(const BenchmarkDataset& ds) {
  std::string out;
  json header = {{"schema_version", kSchemaVersion},
                 {"kind", "benchmark"},
                 {"source", std::string(to_string(ds.source))}};
  if (ds.generator_seed) header["generator_seed"] = *ds.generator_seed;
  out += header.dump() + "\n";
  for (const auto& s : ds.samples) {
    json record = json::object();
    record["kernel_type"] = std::string(to_string(s.kernel_type));
    record["unit"] = std::string(to_string(s.unit.kind));
    record["soc"] = s.unit.soc;
    for (std::size_t i = 0; i < kNumConfigFields; ++i) {
      auto field = static_cast<ConfigField>(i);
      if (auto v = s.config.get(field))
        record[std::string(to_string(field))] = *v;
    }
    record["energy_mJ"] = s.energy_j * 1e3;
    record["runs"] = s.runs;
    out += record.dump() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> csv_columns() {
  std::vector<std::string> cols = {"kernel_type", "unit", "soc"};
  for (std::size_t i = 0; i < kNumConfigFields; ++i)
    cols.emplace_back(to_string(static_cast<ConfigField>(i)));
  cols.emplace_back("energy_mJ");
  cols.emplace_back("runs");
  return cols;
}

int parse_int(const std::string& cell, const std::string& column) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw ParseError("column '" + column + "': '" + cell +
                     "' is not an integer");
  return value;
}

double parse_double(const std::string& cell, const std::string& column) {
  try {
    std::size_t used = 0;
    double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return value;
  } catch (const std::exception&) {
    throw ParseError("column '" + column + "': '" + cell +
                     "' is not a number");
  }
}

}  // namespace

BenchmarkDataset parse_benchmark_csv(const std::string& text,
                                     Diagnostics* diag) {
  BenchmarkDataset ds;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped[0] == '#') {
      // Metadata comments: "# source=synthetic", "# generator_seed=7".
      auto body = trim(stripped.substr(1));
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      auto key = trim(body.substr(0, eq));
      auto value = trim(body.substr(eq + 1));
      try {
        if (key == "source") ds.source = parse_data_source(value);
        if (key == "generator_seed") ds.generator_seed = std::stoull(value);
      } catch (const std::exception& e) {
        throw ParseError(std::string("bad metadata: ") + e.what(), lineno);
      }
      continue;
    }
    auto cells = split_csv_line(line);
    if (header.empty()) {
      for (auto& c : cells) header.push_back(trim(c));
      for (const char* required : {"kernel_type", "unit", "energy_mJ"})
        if (std::find(header.begin(), header.end(), required) == header.end())
          throw ParseError(std::string("header lacks column '") + required +
                               "'",
                           lineno);
      for (const auto& col : header) {
        bool known = col == "kernel_type" || col == "unit" || col == "soc" ||
                     col == "energy_mJ" || col == "runs" ||
                     parse_config_field(col).has_value();
        if (!known) throw ParseError("unknown column '" + col + "'", lineno);
      }
      continue;
    }
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) +
                           " cells, found " + std::to_string(cells.size()),
                       lineno);
    try {
      EnergySample s;
      bool have_energy = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        auto cell = trim(cells[i]);
        const auto& col = header[i];
        if (cell.empty()) continue;
        if (col == "kernel_type") {
          s.kernel_type = parse_kernel_type(cell);
        } else if (col == "unit") {
          s.unit.kind = parse_unit_kind(cell);
        } else if (col == "soc") {
          s.unit.soc = cell;
        } else if (col == "energy_mJ") {
          s.energy_j = parse_double(cell, col) * 1e-3;
          have_energy = true;
        } else if (col == "runs") {
          s.runs = parse_int(cell, col);
        } else {
          s.config.set(*parse_config_field(col), parse_int(cell, col));
        }
      }
      if (!have_energy) throw ParseError("missing energy_mJ");
      auto problems = validate_sample(s);
      if (!problems.empty()) throw ParseError(problems.front());
      ds.samples.push_back(std::move(s));
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), lineno);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (header.empty() && diag) diag->warn("benchmark file is empty");
  merge_duplicates(ds, diag);
  return ds;
}

std::string to_csv(const BenchmarkDataset& ds) {
  std::string out = "# source=" + std::string(to_string(ds.source)) + "\n";
  if (ds.generator_seed)
    out += "# generator_seed=" + std::to_string(*ds.generator_seed) + "\n";
  auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& s : ds.samples) {
    out += csv_escape(to_string(s.kernel_type));
    out += ",";
    out += to_string(s.unit.kind);
    out += "," + csv_escape(s.unit.soc);
    for (std::size_t i = 0; i < kNumConfigFields; ++i) {
      out += ",";
      if (auto v = s.config.get(static_cast<ConfigField>(i)))
        out += std::to_string(*v);
    }
    out += "," + format_number(s.energy_j * 1e3);
    out += "," + std::to_string(s.runs) + "\n";
  }
  return out;
}

BenchmarkDataset ingest_benchmark(const std::filesystem::path& path,
                                  Diagnostics* diag) {
  auto text = read_text_file(path);
  try {
    if (path.extension() == ".csv") return parse_benchmark_csv(text, diag);
    return parse_benchmark_jsonl(text, diag);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_benchmark(const std::filesystem::path& path,
                     const BenchmarkDataset& ds) {
  write_text_file(path, path.extension() == ".csv" ? to_csv(ds) : to_jsonl(ds));
}

// ---------------------------------------------------------------------------
// Splitting

std::pair<BenchmarkDataset, BenchmarkDataset> split_dataset(
    const BenchmarkDataset& ds, double train_fraction, std::uint64_t seed,
    Diagnostics* diag) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error("train_fraction must lie strictly between 0 and 1");
  std::vector<bool> to_train(ds.samples.size(), false);
  auto strata = ds.strata();
  for (std::size_t k = 0; k < strata.size(); ++k) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < ds.samples.size(); ++i)
      if (ds.samples[i].kernel_type == strata[k].first &&
          ds.samples[i].unit == strata[k].second)
        members.push_back(i);
    if (members.size() < 2) {
      if (diag)
        diag->warn("stratum " + std::string(to_string(strata[k].first)) +
                   " on " + describe(strata[k].second) +
                   " has fewer than 2 samples; assigned to train");
      for (auto i : members) to_train[i] = true;
      continue;
    }
    Rng rng(derive_seed(seed, k));
    rng.shuffle(members);
    auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t j = 0; j < n_train; ++j) to_train[members[j]] = true;
  }
  BenchmarkDataset train, test;
  train.source = test.source = ds.source;
  train.generator_seed = test.generator_seed = ds.generator_seed;
  for (std::size_t i = 0; i < ds.samples.size(); ++i)
    (to_train[i] ? train : test).samples.push_back(ds.samples[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace iotcarbon
