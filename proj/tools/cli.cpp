#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "iotcarbon/adaptive_sampling.h"
#include "iotcarbon/embodied.h"
#include "iotcarbon/energy_dataset.h"
#include "iotcarbon/energy_predictor.h"
#include "iotcarbon/flops.h"
#include "iotcarbon/model_io.h"
#include "iotcarbon/operational.h"
#include "iotcarbon/report.h"
#include "iotcarbon/rng.h"
#include "iotcarbon/scenario.h"
#include "iotcarbon/schema_io.h"
#include "iotcarbon/synthetic.h"
#include "iotcarbon/text.h"

#ifndef IOTCARBON_DATA_DIR
#define IOTCARBON_DATA_DIR "data"
#endif

namespace iotcarbon::cli {

namespace fs = std::filesystem;

fs::path data_dir() { return IOTCARBON_DATA_DIR; }

fs::path factor_path(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("IOTCARBON_FACTORS"); env && *env)
    return env;
  return data_dir() / "factors" / "calibrated.json";
}

fs::path resolve_fixture(const std::string& name, const std::string& folder) {
  fs::path p(name);
  if (fs::exists(p)) return p;
  auto bundled = data_dir() / folder / (name + ".json");
  if (fs::exists(bundled)) return bundled;
  throw LookupError("no file or bundled " + folder + " fixture named '" +
                    name + "'");
}

const std::vector<std::string>& google_devices() {
  static const std::vector<std::string> names = {
      "pixel-watch-2", "chromecast-hd", "pixel-6-pro"};
  return names;
}

const std::vector<std::string>& bundled_networks() {
  static const std::vector<std::string> names = {
      "mobilenetv2", "shufflenetv2", "squeezenet1.1", "resnet18"};
  return names;
}

std::vector<DeviceCheck> check_google(const FactorPack& pack) {
  auto expected = read_json_file(data_dir() / "expected" / "google.json");
  check_header(expected, "expected");
  std::vector<DeviceCheck> out;
  for (const auto& e : expected.at("devices")) {
    DeviceCheck c;
    auto stem = e.at("device").get<std::string>();
    auto device = load_device(resolve_fixture(stem, "devices"));
    c.device = device.name;
    c.total_kg = embodied_total(device, std::nullopt, pack).total_kg;
    c.table_kg = e.at("table_total_kg").get<double>();
    c.reported_kg = e.at("google_reported_kg").get<double>();
    c.table_deviation_pct = e.at("deviation_pct").get<double>();
    c.deviation_pct = 100.0 * (c.total_kg - c.reported_kg) / c.reported_kg;
    c.ok = std::abs(c.total_kg - c.table_kg) <= 0.005 * c.table_kg &&
           std::abs(c.deviation_pct - c.table_deviation_pct) <= 0.3;
    out.push_back(c);
  }
  return out;
}

std::vector<FlopsCheck> check_networks() {
  std::vector<FlopsCheck> out;
  for (const auto& stem : bundled_networks()) {
    auto net = load_network(resolve_fixture(stem, "networks"));
    FlopsCheck c;
    c.network = net.name;
    c.flops = count_flops(net);
    c.macs = count_macs(net);
    c.declared = net.metadata.declared_flops.value_or(0.0);
    c.deviation_pct =
        c.declared > 0 ? 100.0 * (c.flops - c.declared) / c.declared : 0.0;
    c.ok = c.declared > 0 && std::abs(c.deviation_pct) <= 10.0;
    out.push_back(c);
  }
  return out;
}

namespace {

struct Common {
  std::optional<std::string> factors;
  std::optional<std::string> device;
  std::optional<std::string> network;
  std::optional<std::string> models;
  std::optional<std::string> usage;
  std::optional<std::string> region;
  std::string unit = "gpu";
  std::string soc = "snapdragon-8-gen3";
  std::optional<int> bitwidth;
  std::string format = "table";
  std::optional<std::string> out_path;
  bool strict = false;
};

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  ReadOptions read_options() { return {common.strict, &diag_}; }

  FactorPack pack(bool warn = false) {
    auto p = load_factor_pack(factor_path(common.factors), read_options());
    auto report = validate_factor_pack(p);
    if (!report.ok()) throw ValidationError(report.violations);
    if (warn)
      for (auto& w : report.warnings) diag_.warn(w);
    return p;
  }

  DeviceDescription device() {
    if (!common.device) throw UsageError("--device is required");
    return load_device(resolve_fixture(*common.device, "devices"),
                       read_options());
  }

  ExecutionUnit unit() {
    ExecutionUnit u;
    u.kind = parse_unit_kind(common.unit);
    if (!find_soc(common.soc)) throw LookupError("unknown SoC '" + common.soc + "'");
    u.soc = common.soc;
    return u;
  }

  std::optional<NetworkDescription> network(const ExecutionUnit& u) {
    if (!common.network) return std::nullopt;
    auto net = load_network(resolve_fixture(*common.network, "networks"),
                            read_options());
    int bw = common.bitwidth.value_or(u.kind == UnitKind::kNpu ? 0 : 32);
    if (bw == 0) {
      auto current = network_bitwidth(net);
      if (!current || !bitwidth_allowed(u.kind, *current))
        throw UsageError("--bitwidth {4,8,16} is required to run " + net.name +
                         " on the NPU");
      bw = *current;
    }
    if (!bitwidth_allowed(u.kind, bw))
      throw UsageError("bitwidth " + std::to_string(bw) + " cannot run on " +
                       std::string(to_string(u.kind)));
    for (auto& k : net.kernels) k.config.set(ConfigField::kBw, bw);
    return net;
  }

  UsageProfile usage(double lifetime) {
    UsageProfile u;
    u.inferences_per_day = 0.0;
    u.active_years = lifetime;
    if (common.usage)
      u = load_usage(resolve_fixture(*common.usage, "usage"), read_options());
    if (common.region) u.region = *common.region;
    return u;
  }

  const ModelBundle* bundle(bool needed) {
    if (!needed) return nullptr;
    if (!common.models)
      throw UsageError("--models is required when --network is given");
    bundle_ = load_bundle(*common.models);
    return &bundle_;
  }

  Case build_case() {
    Case c;
    c.pack = pack();
    c.device = device();
    c.unit = unit();
    c.network = network(c.unit);
    c.usage = usage(c.device.lifetime_years);
    return c;
  }

  void emit(const std::string& text) {
    if (common.out_path) {
      write_text_file(*common.out_path, text);
      err_ << "wrote " << *common.out_path << "\n";
    } else {
      out_ << text;
    }
  }

  void flush_warnings() {
    std::set<std::string> seen;
    for (const auto& w : diag_.warnings)
      if (seen.insert(w).second) err_ << "warning: " << w << "\n";
    diag_.warnings.clear();
  }

  Diagnostics& diag() { return diag_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }

  Common common;

 private:
  std::ostream& out_;
  std::ostream& err_;
  Diagnostics diag_;
  ModelBundle bundle_;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("-o,--out", c.out_path, "Write to this file instead of stdout");
}

void add_case_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--factors", c.factors, "Factor pack (default $IOTCARBON_FACTORS or bundled)");
  cmd->add_option("--device", c.device, "Device file or bundled name");
  cmd->add_option("--network", c.network, "Network file or bundled name");
  cmd->add_option("--models", c.models, "Model bundle from `train`");
  cmd->add_option("--usage", c.usage, "Usage profile file or bundled name");
  cmd->add_option("--region", c.region, "Override the usage region");
  cmd->add_option("--unit", c.unit, "cpu, gpu or npu")->capture_default_str();
  cmd->add_option("--soc", c.soc, "SoC id")->capture_default_str();
  cmd->add_option("--bitwidth", c.bitwidth, "Rewrite the network bitwidth");
  add_format(cmd, c);
}

ReportFormat format_of(const Common& c) { return parse_report_format(c.format); }

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> data;
  std::string out;
  ForestHyperparams hp;
  std::optional<int> max_depth;
  unsigned threads = 0;
};

int cmd_train(Runner& r, TrainArgs& a) {
  BenchmarkDataset ds;
  for (const auto& path : a.data) {
    auto part = ingest_benchmark(path, &r.diag());
    if (ds.empty()) {
      ds.source = part.source;
      ds.generator_seed = part.generator_seed;
    }
    ds.samples.insert(ds.samples.end(), part.samples.begin(), part.samples.end());
  }
  merge_duplicates(ds, &r.diag());
  a.hp.max_depth = a.max_depth;
  auto bundle = train_bundle(ds, a.hp, a.threads);
  save_bundle(a.out, bundle);
  r.err() << "trained " << bundle.models.size() << " models on " << ds.size()
          << " samples -> " << a.out << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string unit = "all";
  std::optional<std::string> type;
  std::uint64_t seed = 0;
  double sigma = 0.05;
  std::string out;
};

int cmd_synth(Runner& r, SynthArgs& a) {
  auto model = calibrated_cost_model(a.sigma);
  std::vector<UnitKind> kinds;
  if (a.unit == "all")
    kinds = {UnitKind::kCpu, UnitKind::kGpu, UnitKind::kNpu};
  else
    kinds = {parse_unit_kind(a.unit)};
  std::optional<KernelType> only;
  if (a.type) only = parse_kernel_type(*a.type);
  BenchmarkDataset ds;
  ds.source = DataSource::kSynthetic;
  ds.generator_seed = a.seed;
  for (auto kind : kinds) {
    ExecutionUnit u{kind, r.common.soc};
    auto part = bundled_synthetic(model, u, derive_seed(a.seed, static_cast<std::uint64_t>(kind)), only);
    ds.samples.insert(ds.samples.end(), part.samples.begin(), part.samples.end());
  }
  write_benchmark(a.out, ds);
  r.err() << "wrote " << ds.size() << " synthetic samples -> " << a.out << "\n";
  return kExitOk;
}

struct SampleArgs {
  std::string type = "conv+bn+relu";
  std::string unit = "npu";
  std::size_t budget = 100;
  std::uint64_t seed = 0;
  int rounds = 4;
  bool uniform = false;
};

int cmd_sample(Runner& r, SampleArgs& a) {
  auto type = parse_kernel_type(a.type);
  auto kind = parse_unit_kind(a.unit);
  auto space = standard_space(type, kind);
  auto model = calibrated_cost_model(0.0);
  std::vector<KernelConfig> plan;
  if (a.uniform) {
    plan = uniform_sample(space, a.budget, a.seed);
  } else {
    EnergyOracle oracle = [&](const KernelConfig& c) {
      return model.energy({type, c}, kind);
    };
    ForestHyperparams hp;
    hp.n_trees = 30;
    hp.features_per_split = 1.0;
    hp.seed = a.seed;
    RefitFn refit = [&](const std::vector<KernelConfig>& cs,
                        const std::vector<double>& es) -> EnergyEstimate {
      BenchmarkDataset ds;
      for (std::size_t i = 0; i < cs.size(); ++i)
        ds.samples.push_back({type, cs[i], ExecutionUnit{kind, r.common.soc}, es[i], 1});
      auto m = std::make_shared<KernelEnergyModel>(train_forest(ds, hp, 1));
      return [m](const KernelConfig& c) { return predict_kernel(*m, c); };
    };
    plan = adaptive_sample(space, {}, oracle, refit, a.budget, a.seed,
                           AdaptiveOptions{a.rounds});
  }
  std::ostringstream text;
  auto fields = config_fields(type);
  for (std::size_t i = 0; i < fields.size(); ++i)
    text << (i ? "," : "") << to_string(fields[i]);
  text << "\n";
  for (const auto& c : plan) {
    for (std::size_t i = 0; i < fields.size(); ++i)
      text << (i ? "," : "") << c.get(fields[i]).value_or(0);
    text << "\n";
  }
  r.emit(text.str());
  return kExitOk;
}

int cmd_estimate_op(Runner& r) {
  if (!r.common.network) throw UsageError("--network is required");
  auto p = r.pack();
  auto u = r.unit();
  auto net = *r.network(u);
  auto usage = r.usage(3.0);
  auto problems = validate_usage(usage);
  if (!problems.empty()) throw ValidationError(problems);
  auto pred = predict_network(*r.bundle(true), net, u, &r.diag());
  double kg = lifetime_operational(pred.total_j, usage, p.ci);
  double ci = lookup_ci(p.ci, usage.region);
  auto format = format_of(r.common);
  std::ostringstream text;
  if (format == ReportFormat::kJson) {
    nlohmann::json kernels = nlohmann::json::array();
    for (const auto& k : pred.breakdown)
      kernels.push_back({{"index", k.index},
                         {"kernel", kernel_to_json(k.kernel)},
                         {"energy_j", k.energy_j}});
    nlohmann::json doc = {{"schema_version", kSchemaVersion},
                          {"kind", "operational-estimate"},
                          {"network", net.name},
                          {"unit", to_string(u.kind)},
                          {"soc", u.soc},
                          {"bitwidth", net.kernels.empty() ? 32 : net.kernels[0].config.bw()},
                          {"energy_per_inference_j", pred.total_j},
                          {"inferences", inference_count(usage)},
                          {"region", usage.region},
                          {"ci_kg_per_kwh", ci},
                          {"operational_kg", kg},
                          {"kernels", kernels}};
    text << doc.dump(2) << "\n";
  } else if (format == ReportFormat::kCsv) {
    text << "index,kernel,energy_j\n";
    for (const auto& k : pred.breakdown)
      text << k.index << ',' << csv_escape(describe(k.kernel.type, k.kernel.config))
           << ',' << format_number(k.energy_j) << '\n';
    text << "total,," << format_number(pred.total_j) << '\n';
  } else {
    text << net.name << " on " << describe(u) << "\n"
         << "  energy per inference  " << format_fixed(pred.total_j * 1e3, 4) << " mJ\n"
         << "  inferences            " << format_number(inference_count(usage)) << "\n"
         << "  carbon intensity      " << format_number(ci) << " kgCO2-eq/kWh ("
         << usage.region << ")\n"
         << "  operational carbon    " << format_fixed(kg, 6) << " kgCO2-eq\n";
  }
  r.emit(text.str());
  return kExitOk;
}

struct EmbArgs {
  std::optional<double> usage_years;
};

int cmd_estimate_emb(Runner& r, EmbArgs& a) {
  auto p = r.pack();
  auto d = r.device();
  auto rep = embodied_total(d, a.usage_years, p);
  for (const auto& w : rep.warnings) r.diag().warn(w);
  auto format = format_of(r.common);
  std::ostringstream text;
  if (format == ReportFormat::kCsv) {
    text << render_embodied_csv(rep);
  } else if (format == ReportFormat::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : rep.rows)
      rows.push_back({{"label", row.label}, {"kind", row.kind},
                      {"subkind", row.subkind}, {"formula", to_string(row.formula)},
                      {"raw_kg", row.raw_kg}, {"amortized_kg", row.amortized_kg}});
    nlohmann::json doc = {{"schema_version", kSchemaVersion},
                          {"kind", "embodied-estimate"},
                          {"device", rep.device},
                          {"usage_years", rep.usage_years},
                          {"lifetime_years", rep.lifetime_years},
                          {"rows", rows},
                          {"total_kg", rep.total_kg}};
    text << doc.dump(2) << "\n";
  } else {
    text << rep.device << " (" << format_number(rep.usage_years) << " of "
         << format_number(rep.lifetime_years) << " years)\n";
    for (const auto& [label, kg] : rep.by_label())
      text << "  " << label << std::string(label.size() < 12 ? 12 - label.size() : 1, ' ')
           << format_fixed(kg, 3) << "\n";
    text << "  Total       " << format_fixed(rep.total_kg, 3) << " kgCO2-eq\n";
  }
  r.emit(text.str());
  return kExitOk;
}

struct ReportArgs {
  std::string scenario = "baseline";
};

int cmd_report(Runner& r, ReportArgs& a) {
  auto base = r.build_case();
  auto s = parse_scenario(a.scenario);
  auto c = apply_scenario(base, s);
  auto rep = full_report(c, r.bundle(c.network.has_value()), &r.diag());
  if (!s.transforms.empty()) rep.lineage.push_back(s.name);
  r.emit(render_report(rep, format_of(r.common)));
  return kExitOk;
}

struct WhatIfArgs {
  std::vector<std::string> scenarios;
};

int cmd_whatif(Runner& r, WhatIfArgs& a) {
  auto base = r.build_case();
  auto names = a.scenarios.empty() ? mitigation_scenarios() : a.scenarios;
  std::vector<Scenario> list;
  for (const auto& n : names) {
    auto s = parse_scenario(n);
    bool needs_network = std::any_of(
        s.transforms.begin(), s.transforms.end(),
        [](const Transform& t) { return std::holds_alternative<SetExecution>(t); });
    if (needs_network && !base.network) {
      r.diag().warn("skipping " + s.name + ": it changes execution and no --network was given");
      continue;
    }
    list.push_back(std::move(s));
  }
  auto rows = what_if(base, list, r.bundle(base.network.has_value()), &r.diag());
  r.emit(render_what_if(rows, format_of(r.common)));
  return kExitOk;
}

struct ValidateArgs {
  std::string fixtures = "google";
};

int cmd_validate(Runner& r, ValidateArgs& a) {
  std::ostringstream text;
  bool ok = true;
  if (a.fixtures == "google") {
    auto checks = check_google(r.pack(true));
    text << "device                   estimate  table  reported  deviation  expected\n";
    for (const auto& c : checks) {
      text << c.device << std::string(c.device.size() < 25 ? 25 - c.device.size() : 1, ' ')
           << format_fixed(c.total_kg, 2) << std::string(5, ' ') << format_fixed(c.table_kg, 1)
           << "   " << format_fixed(c.reported_kg, 2) << "    "
           << format_fixed(c.deviation_pct, 2) << "%     "
           << format_fixed(c.table_deviation_pct, 2) << "%  " << (c.ok ? "ok" : "MISMATCH")
           << "\n";
      ok = ok && c.ok;
    }
  } else {
    auto checks = check_networks();
    text << "network        FLOPs (1 MAC = 2 FLOPs)  MACs     declared  deviation\n";
    for (const auto& c : checks) {
      text << c.network << std::string(c.network.size() < 15 ? 15 - c.network.size() : 1, ' ')
           << format_fixed(c.flops / 1e6, 1) << "M" << std::string(15, ' ')
           << format_fixed(c.macs / 1e6, 1) << "M  " << format_fixed(c.declared / 1e6, 1)
           << "M  " << format_fixed(c.deviation_pct, 1) << "% "
           << (c.ok ? "ok" : "outside 10%") << "\n";
      ok = ok && c.ok;
    }
  }
  r.emit(text.str());
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Carbon footprint estimator for deep-learning inference on IoT devices"};
  app.name("iotcarbon");
  app.require_subcommand(1);
  Runner r(out, err);
  auto& c = r.common;
  app.add_flag("--strict", c.strict, "Reject unknown fields in input files");

  TrainArgs train;
  train.hp.features_per_split = 1.0;
  auto* t = app.add_subcommand("train", "Train a model bundle from benchmark files");
  t->add_option("--data", train.data, "Benchmark CSV or JSON-lines files")->required();
  t->add_option("--out,-o", train.out, "Model bundle to write")->required();
  t->add_option("--seed", train.hp.seed, "Forest seed")->capture_default_str();
  t->add_option("--trees", train.hp.n_trees)->capture_default_str();
  t->add_option("--max-depth", train.max_depth);
  t->add_option("--min-leaf", train.hp.min_samples_leaf)->capture_default_str();
  t->add_option("--features-per-split", train.hp.features_per_split)->capture_default_str();
  t->add_option("--bootstrap", train.hp.bootstrap)->capture_default_str();
  t->add_option("--monotone", train.hp.monotone)->capture_default_str();
  t->add_option("--threads", train.threads, "0 = all cores; output does not depend on it");
  t->add_flag("--strict", c.strict);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a calibrated synthetic benchmark dataset");
  s->add_option("--unit", synth.unit, "cpu, gpu, npu or all")->capture_default_str();
  s->add_option("--soc", c.soc)->capture_default_str();
  s->add_option("--type", synth.type, "Only this kernel type");
  s->add_option("--seed", synth.seed)->capture_default_str();
  s->add_option("--sigma", synth.sigma, "Lognormal noise")->capture_default_str();
  s->add_option("--out,-o", synth.out, "CSV or JSON-lines file")->required();

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "Adaptive sampling plan over a kernel space");
  sa->add_option("--type", sample.type)->capture_default_str();
  sa->add_option("--unit", sample.unit)->capture_default_str();
  sa->add_option("--soc", c.soc)->capture_default_str();
  sa->add_option("--budget", sample.budget)->capture_default_str();
  sa->add_option("--seed", sample.seed)->capture_default_str();
  sa->add_option("--rounds", sample.rounds)->capture_default_str();
  sa->add_flag("--uniform", sample.uniform, "Uniform plan instead");
  sa->add_option("-o,--out", c.out_path);

  auto* op = app.add_subcommand("estimate-op", "Operational carbon of a network");
  add_case_flags(op, c);
  op->add_flag("--strict", c.strict);

  EmbArgs emb;
  auto* em = app.add_subcommand("estimate-emb", "Embodied carbon of a device");
  add_case_flags(em, c);
  em->add_option("--usage-years", emb.usage_years, "Default: device lifetime");
  em->add_flag("--strict", c.strict);

  ReportArgs report;
  auto* rp = app.add_subcommand("report", "Operational plus embodied footprint");
  add_case_flags(rp, c);
  rp->add_option("--scenario", report.scenario, "e.g. rcase+rpcb")->capture_default_str();
  rp->add_flag("--strict", c.strict);

  WhatIfArgs whatif;
  auto* wi = app.add_subcommand("whatif", "Compare scenarios against the baseline");
  add_case_flags(wi, c);
  wi->add_option("--scenario", whatif.scenarios, "Comma-separated scenarios")->delimiter(',');
  wi->add_flag("--strict", c.strict);

  ValidateArgs validate;
  auto* va = app.add_subcommand("validate", "Check bundled fixtures against expected values");
  va->add_option("--fixtures", validate.fixtures, "google or networks")
      ->check(CLI::IsMember({"google", "networks"}))
      ->capture_default_str();
  va->add_option("--factors", c.factors);
  add_format(va, c);

  for (auto* cmd : {rp, wi})
    cmd->callback([&c, cmd] {
      if (!c.device) throw CLI::RequiredError("--device");
      (void)cmd;
    });
  em->callback([&c] {
    if (!c.device) throw CLI::RequiredError("--device");
  });
  op->callback([&c] {
    if (!c.network) throw CLI::RequiredError("--network");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  int code = kExitOk;
  try {
    if (t->parsed()) code = cmd_train(r, train);
    else if (s->parsed()) code = cmd_synth(r, synth);
    else if (sa->parsed()) code = cmd_sample(r, sample);
    else if (op->parsed()) code = cmd_estimate_op(r);
    else if (em->parsed()) code = cmd_estimate_emb(r, emb);
    else if (rp->parsed()) code = cmd_report(r, report);
    else if (wi->parsed()) code = cmd_whatif(r, whatif);
    else if (va->parsed()) code = cmd_validate(r, validate);
  } catch (const UsageError& e) {
    r.flush_warnings();
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    r.flush_warnings();
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  r.flush_warnings();
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<const char*> argv = {"iotcarbon"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace iotcarbon::cli
