#include <gtest/gtest.h>

#include <sstream>

#include "cli.h"
#include "fixtures.h"
#include "iotcarbon/model_io.h"
#include "iotcarbon/text.h"

namespace iotcarbon {
namespace {

using testing::TempDir;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// A small bundle for the CLI tests, trained once per process.
const std::string& model_file() {
  static TempDir dir("cli-models");
  static const std::string path = [] {
    auto p = (dir / "models.json").string();
    auto r = run({"synth", "--unit", "all", "--seed", "3", "--out", (dir / "d.csv").string()});
    if (r.code != 0) throw Error(r.err);
    r = run({"train", "--data", (dir / "d.csv").string(), "--out", p, "--trees", "5"});
    if (r.code != 0) throw Error(r.err);
    return p;
  }();
  return path;
}

TEST(Cli, NoArgumentsIsUsageError) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run({"report", "--device", "pixel-watch-2", "--bogus"}).code, cli::kExitUsage);
}

TEST(Cli, ReportWithoutDeviceExitsTwo) {
  auto r = run({"report"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("--device"), std::string::npos);
}

TEST(Cli, ValidateGoogleFixtures) {
  auto r = run({"validate", "--fixtures", "google"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("17.43"), std::string::npos);
  EXPECT_NE(r.out.find("11.1"), std::string::npos);
  EXPECT_NE(r.out.find("77.9"), std::string::npos);
}

TEST(Cli, CheckGoogleRecords) {
  auto checks = cli::check_google(testing::bundled_pack());
  ASSERT_EQ(checks.size(), 3u);
  for (const auto& c : checks) EXPECT_TRUE(c.ok) << c.device;
}

TEST(Cli, CheckNetworksReportsMacs) {
  auto checks = cli::check_networks();
  ASSERT_EQ(checks.size(), 4u);
  // Elementwise kernels add FLOPs without MACs.
  for (const auto& c : checks) EXPECT_GE(c.flops, 2 * c.macs) << c.network;
}

TEST(Cli, EstimateEmbodied) {
  auto r = run({"estimate-emb", "--device", "pixel-watch-2", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("Casing"), std::string::npos);
}

TEST(Cli, EstimateOperational) {
  auto r = run({"estimate-op", "--network", "squeezenet1.1", "--models", model_file(),
                "--usage", "hourly", "--format", "json"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("kg"), std::string::npos);
}

TEST(Cli, UnknownDeviceFails) {
  auto r = run({"estimate-emb", "--device", "toaster"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ReportIsDeterministic) {
  std::vector<std::string> args = {"report", "--device", "chromecast-hd", "--network",
                                   "squeezenet1.1", "--models", model_file(),
                                   "--usage", "camera-10fps", "--format", "json"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, cli::kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, WhatIfDeltasNonPositive) {
  auto r = run({"whatif", "--device", "pixel-watch-2", "--scenario", "rcase,rpcb,22nm",
                "--format", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto lines = split(r.out, '\n');
  int rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto cells = split_csv_line(lines[i]);
    EXPECT_LE(std::stod(cells[4]), 0.0) << lines[i];
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, UnknownScenarioFails) {
  auto r = run({"whatif", "--device", "pixel-watch-2", "--scenario", "solar"});
  EXPECT_EQ(r.code, cli::kExitFailure);
}

TEST(Cli, TrainIsByteIdentical) {
  TempDir dir("cli-train");
  auto data = (dir / "d.csv").string();
  ASSERT_EQ(run({"synth", "--unit", "gpu", "--type", "fc", "--out", data}).code, 0);
  auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  ASSERT_EQ(run({"train", "--data", data, "--out", a, "--trees", "8", "--threads", "1"}).code, 0);
  ASSERT_EQ(run({"train", "--data", data, "--out", b, "--trees", "8", "--threads", "0"}).code, 0);
  EXPECT_EQ(read_text_file(a), read_text_file(b));
  EXPECT_NO_THROW(load_bundle(a));
}

TEST(Cli, SampleCommand) {
  auto r = run({"sample", "--type", "fc", "--unit", "gpu", "--budget", "10", "--uniform"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
}

TEST(Cli, FactorPathPrefersFlag) {
  EXPECT_EQ(cli::factor_path(std::string("x.json")), std::filesystem::path("x.json"));
  EXPECT_EQ(cli::factor_path(std::nullopt).filename(), "calibrated.json");
}

TEST(Cli, ResolveFixtureByStem) {
  auto p = cli::resolve_fixture("resnet18", "networks");
  EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_THROW(cli::resolve_fixture("alexnet", "networks"), Error);
}

}  // namespace
}  // namespace iotcarbon
