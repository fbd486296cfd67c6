// Copyright 2026 The InferBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "infer_bench/cli/cli.h"

namespace infer_bench {
namespace {

namespace fs = std::filesystem;

const std::string kData = INFER_BENCH_TEST_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "infer_bench");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           fmt::format("ib_cli_{}", ::testing::UnitTest::GetInstance()
                                        ->current_test_info()
                                        ->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  fs::path dir_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "--scale", "2"}).code, kExitUsage);
  EXPECT_EQ(Cli({"run", "--threads", "0"}).code, kExitUsage);
  EXPECT_EQ(Cli({"inspect", "10"}).code, kExitUsage);
  EXPECT_EQ(Cli({"rank", "x", "--group-by", "planet"}).code, kExitUsage);
  const Result r = Cli({"run", "--backend", "npu", "--out", Path("s.jsonl")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("npu"), std::string::npos);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, InspectSrcnn) {
  const Result r = Cli({"inspect", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::regex conv_row("\nconv2d_\\d+ +conv2d ");
  const auto n = std::distance(
      std::sregex_iterator(r.out.begin(), r.out.end(), conv_row),
      std::sregex_iterator());
  EXPECT_EQ(n, 3);
  EXPECT_NE(r.out.find("params: 69251"), std::string::npos);
}

TEST_F(CliTest, InspectProbeAliasesSrcnn) {
  const Result r = Cli({"inspect", "9"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("aliases test 4"), std::string::npos);
}

TEST_F(CliTest, InspectMobileNetSizeRatio) {
  const Result r = Cli({"inspect", "1", "--scale", "0.25"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("ratio ([0-9.]+)")));
  EXPECT_NEAR(std::stod(m[1]) / 4.0, 1.0, 0.02);
}

TEST_F(CliTest, RunIsDeterministicUnderSimulatedClock) {
  const std::vector<std::string> args = {
      "run",       "--scale", "0.1",  "--tests",       "4,8,9",
      "--seed",    "7",       "--sim-cost-ms", "100", "--device",
      "d",         "--soc",   "s",    "--ram-gb",      "8",
      "--profile", kData + "/ranking_profile.json", "--out"};
  auto a = args;
  a.push_back(Path("a.jsonl"));
  auto b = args;
  b.push_back(Path("b.jsonl"));
  const Result ra = Cli(a);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  ASSERT_EQ(Cli(b).code, kExitOk);
  EXPECT_EQ(ReadFile(Path("a.jsonl")), ReadFile(Path("b.jsonl")));
  EXPECT_NE(ra.out.find("AI score"), std::string::npos);
  // Header, two measurements and the probe.
  const std::string text = ReadFile(Path("a.jsonl"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

TEST_F(CliTest, QuantizedBackendFallsBackOutsideMobileNet) {
  const Result r = Cli({"run", "--backend", "quantized", "--scale", "0.1",
                        "--tests", "1,4", "--sim-cost-ms", "100", "--out",
                        Path("q.jsonl"), "--profile", Path("none.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("quantized  all_ops_supported"), std::string::npos);
  EXPECT_NE(r.out.find("reference  fallback_unsupported_op"),
            std::string::npos);
  EXPECT_NE(r.out.find("score skipped"), std::string::npos);
}

TEST_F(CliTest, ScoreAndCalibrate) {
  // First suite of the fixture only.
  std::ifstream in(kData + "/ranking_fixture.jsonl");
  std::ofstream one(Path("one.jsonl"));
  std::string line;
  for (int i = 0; i < 10 && std::getline(in, line); ++i) one << line << "\n";
  one.close();

  Result r = Cli({"calibrate", Path("one.jsonl"), "--total", "900", "--out",
                  Path("p.json"), "--name", "mine"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = Cli({"score", Path("one.jsonl"), "--profile", Path("p.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("AI score: 900.00"), std::string::npos);

  r = Cli({"score", Path("one.jsonl"), "--profile", Path("p.json"),
           "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)[0]["total"].get<double>(), 900.0);

  // Six suites cannot calibrate a single profile.
  EXPECT_EQ(Cli({"calibrate", kData + "/ranking_fixture.jsonl", "--out",
                 Path("q.json")})
                .code,
            kExitValidation);
}

TEST_F(CliTest, ProfileFromEnvironment) {
  ::setenv(kProfileEnvVar, (kData + "/ranking_profile.json").c_str(), 1);
  const Result r = Cli({"score", kData + "/ranking_fixture.jsonl"});
  ::unsetenv(kProfileEnvVar);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("profile: fixture"), std::string::npos);
}

TEST_F(CliTest, IoAndValidationExitCodes) {
  const std::string profile = kData + "/ranking_profile.json";
  EXPECT_EQ(Cli({"score", Path("missing.jsonl"), "--profile", profile}).code,
            kExitIo);
  std::ofstream(Path("bad.jsonl")) << "{\"type\": \"header\"}\n";
  EXPECT_EQ(Cli({"score", Path("bad.jsonl"), "--profile", profile}).code,
            kExitValidation);
  std::ofstream(Path("bad_profile.json")) << "{\"name\": \"x\"}";
  EXPECT_EQ(Cli({"score", kData + "/ranking_fixture.jsonl", "--profile",
                 Path("bad_profile.json")})
                .code,
            kExitValidation);
  EXPECT_EQ(Cli({"rank", Path("nowhere")}).code, kExitIo);
}

TEST_F(CliTest, RankWritesGoldenCsv) {
  fs::create_directories(Path("in"));
  fs::copy_file(kData + "/ranking_fixture.jsonl", Path("in/a.jsonl"));
  const Result r = Cli({"rank", Path("in"), "--group-by", "soc", "--format",
                        "csv", "--out", Path("out"), "--profile",
                        kData + "/ranking_profile.json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(ReadFile(Path("out/soc-ranking.csv")),
            ReadFile(kData + "/ranking_soc.csv"));
  ASSERT_EQ(Cli({"rank", Path("in/a.jsonl"), "--format", "md", "--out",
                 Path("out"), "--profile", kData + "/ranking_profile.json"})
                .code,
            kExitOk);
  EXPECT_TRUE(fs::exists(Path("out/device-ranking.md")));
}

}  // namespace
}  // namespace infer_bench
