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

#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "infer_bench/common/error.h"
#include "infer_bench/graph/analyzers.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/kernels/reference.h"
#include "infer_bench/common/splitmix.h"
#include "infer_bench/runner/suite.h"
#include "protocol_cases.h"

namespace infer_bench {
namespace {

class ProtocolTest
    : public ::testing::TestWithParam<testdata::ProtocolCase> {};

TEST_P(ProtocolTest, ScriptedCosts) {
  const testdata::ProtocolCase& c = GetParam();
  SimulatedClock clock(c.costs_ms);
  Measurement m = RunProtocol([](int64_t) {}, c.budget_s, clock);
  EXPECT_EQ(m.images_processed, c.images);
  EXPECT_EQ(m.passed, c.passed);
  EXPECT_DOUBLE_EQ(m.avg_ms, c.avg_ms);
  EXPECT_EQ(m.budget_s, c.budget_s);
}

INSTANTIATE_TEST_SUITE_P(Scripted, ProtocolTest,
                         ::testing::ValuesIn(testdata::kProtocolCases));

TEST(ProtocolTest, FailureIsRecorded) {
  SimulatedClock clock({100});
  Measurement m = RunProtocol(
      [](int64_t i) {
        if (i == 2) throw std::runtime_error("boom");
      },
      10, clock);
  EXPECT_FALSE(m.passed);
  EXPECT_EQ(m.images_processed, 2);
  EXPECT_NE(m.notes.find("boom"), std::string::npos);
}

TEST(ProtocolTest, RejectsNonPositiveBudget) {
  SimulatedClock clock({1});
  EXPECT_THROW(RunProtocol([](int64_t) {}, 0.0, clock), BenchError);
}

TEST(ProtocolTest, FasterNeverProcessesFewer) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> costs(1 + rng.Next() % 6);
    for (double& c : costs) c = 1.0 + std::floor(rng.NextUnit() * 5000);
    std::vector<double> halved = costs;
    for (double& c : halved) c /= 2;
    const double budget = 1.0 + std::floor(rng.NextUnit() * 20);
    SimulatedClock slow(costs);
    SimulatedClock fast(halved);
    const Measurement a = RunProtocol([](int64_t) {}, budget, slow);
    const Measurement b = RunProtocol([](int64_t) {}, budget, fast);
    EXPECT_GE(b.images_processed, a.images_processed);
  }
}

TEST(ProtocolTest, AverageDropsFirstTwo) {
  EXPECT_EQ(ProtocolAverage({}), 0.0);
  EXPECT_EQ(ProtocolAverage({7}), 7.0);
  EXPECT_EQ(ProtocolAverage({7, 9}), 8.0);
  EXPECT_EQ(ProtocolAverage({100, 100, 4, 6}), 5.0);
}

TEST(RunTestTest, ExecutesWorkload) {
  Workload w = Instantiate(4, 0.1);
  SimulatedClock clock({500});
  Measurement m = RunTest(w, OptimizedKernels(), "optimized", 2.0, clock);
  EXPECT_EQ(m.test_id, 4);
  EXPECT_EQ(m.backend_id, "optimized");
  EXPECT_EQ(m.images_processed, 4);
  EXPECT_TRUE(m.passed);
}

TEST(RunTestTest, KernelErrorBecomesFailedMeasurement) {
  Workload w = Instantiate(1, 0.25);
  SimulatedClock clock({10});
  Measurement m = RunTest(w, OptimizedKernels(), "optimized", 1.0, clock);
  EXPECT_FALSE(m.passed);
  EXPECT_NE(m.notes.find("unsupported_op"), std::string::npos);
}

// SRCNN liveness: while conv2 runs its 64-channel input and 32-channel output
// are both live, so the peak is (64 + 32) * 4 bytes per pixel.
int64_t SrcnnPeak(int units) {
  const int64_t side = int64_t{100} * units;
  return 96 * 4 * side * side;
}

TEST(MemoryProbeTest, AnalyzerMatchesClosedForm) {
  for (int k = 1; k <= 10; ++k) {
    EXPECT_EQ(PeakActivationBytes(ProbeGraph(k, 0, false)), SrcnnPeak(k));
  }
}

TEST(MemoryProbeTest, ZeroCap) {
  ProbeOptions o;
  o.mem_cap_bytes = 0;
  MemoryProbeResult r = RunMemoryProbe(ReferenceKernels(), "reference", o);
  EXPECT_EQ(r.max_resolution_units, 0);
  EXPECT_EQ(r.limiting_cause, LimitingCause::kConfiguredCap);
  EXPECT_EQ(r.bytes_at_limit, SrcnnPeak(1));
}

TEST(MemoryProbeTest, CapPrediction) {
  // 384 * (100 k)^2 <= 256 MiB holds up to k = 8.
  EXPECT_EQ(PredictProbeUnits(1, 1, int64_t{256} << 20), 8);
  ProbeOptions o;
  o.mem_cap_bytes = int64_t{256} << 20;
  o.execute = false;
  MemoryProbeResult r = RunMemoryProbe(ReferenceKernels(), "reference", o);
  EXPECT_EQ(r.max_resolution_units, 8);
  EXPECT_EQ(r.bytes_at_limit, SrcnnPeak(9));
  o.start_units = 3;
  o.step_units = 2;
  EXPECT_EQ(RunMemoryProbe(ReferenceKernels(), "reference", o)
                .max_resolution_units,
            7);
  o.start_units = 9;
  EXPECT_EQ(RunMemoryProbe(ReferenceKernels(), "reference", o)
                .max_resolution_units,
            0);
}

TEST(MemoryProbeTest, ExecutesAdmittedSizes) {
  ProbeOptions o;
  o.mem_cap_bytes = int64_t{16} << 20;
  MemoryProbeResult r = RunMemoryProbe(OptimizedKernels(), "optimized", o);
  EXPECT_EQ(r.max_resolution_units, 2);
  EXPECT_EQ(r.limiting_cause, LimitingCause::kConfiguredCap);
}

TEST(MemoryProbeTest, MonotoneInCap) {
  int prev = 0;
  for (int64_t cap = int64_t{1} << 20; cap <= int64_t{1} << 32; cap *= 2) {
    const int k = PredictProbeUnits(1, 1, cap);
    EXPECT_GE(k, prev);
    prev = k;
  }
}

TEST(MemoryProbeTest, RejectsBadArguments) {
  ProbeOptions o;
  o.start_units = 0;
  EXPECT_THROW(RunMemoryProbe(ReferenceKernels(), "reference", o), BenchError);
  o.start_units = 1;
  o.step_units = 0;
  EXPECT_THROW(RunMemoryProbe(ReferenceKernels(), "reference", o), BenchError);
}

SuiteConfig SmallConfig() {
  SuiteConfig c;
  c.env.host_id = "host";
  c.env.device_name = "dev";
  c.env.soc_name = "soc";
  c.env.ram_gb = 16;
  c.env.scale = 0.1;
  c.env.budget_scale = 0.1;
  c.env.seed = 7;
  return c;
}

std::string SuiteText(const SuiteResult& s) {
  std::ostringstream out;
  WriteSuite(s, out);
  return out.str();
}

TEST(SuiteTest, RunsAllNineDeterministically) {
  const BackendRegistry reg = MakeDefaultRegistry();
  SimulatedClock c1({100});
  SuiteResult a = RunSuite(SmallConfig(), reg, c1);
  ASSERT_EQ(a.measurements.size(), 8u);
  ASSERT_TRUE(a.memory.has_value());
  for (const Measurement& m : a.measurements) {
    EXPECT_TRUE(m.passed) << m.test_id << " " << m.notes;
    ASSERT_TRUE(m.dispatch.has_value());
    const bool cpu_only = m.test_id == 3 || m.test_id == 6 || m.test_id == 7;
    EXPECT_EQ(m.backend_id, cpu_only ? "reference"
                            : m.test_id == 1 ? "quantized" : "optimized");
    if (cpu_only) {
      EXPECT_EQ(m.dispatch->reason, DispatchReason::kForcedByFlag);
    }
  }
  SimulatedClock c2({100});
  SuiteResult b = RunSuite(SmallConfig(), reg, c2);
  EXPECT_EQ(SuiteText(a), SuiteText(b));
}

TEST(SuiteTest, FallbackIsRecorded) {
  BackendRegistry reg;
  reg.Register({kReferenceBackend, AllOpSupport(), ""},
               std::make_shared<ReferenceKernels>());
  std::set<OpSupport> no_add = AllOpSupport();
  no_add.erase({OpKind::kAdd, DType::kFloat32});
  reg.Register({"npu", no_add, ""}, std::make_shared<OptimizedKernels>());
  SuiteConfig c = SmallConfig();
  c.env.backend = "npu";
  c.tests = {4, 5, 8};
  SimulatedClock clock({100});
  SuiteResult s = RunSuite(c, reg, clock);
  EXPECT_EQ(s.Find(4)->backend_id, "npu");
  for (int t : {5, 8}) {
    const Measurement* m = s.Find(t);
    EXPECT_EQ(m->backend_id, "reference");
    EXPECT_EQ(m->dispatch->reason, DispatchReason::kFallbackUnsupportedOp);
    EXPECT_EQ(m->dispatch->op_kind, OpKind::kAdd);
  }
}

TEST(SuiteTest, UnknownBackendIsRecordedNotThrown) {
  SuiteConfig c = SmallConfig();
  c.env.backend = "npu";
  c.tests = {4};
  SimulatedClock clock({100});
  SuiteResult s = RunSuite(c, MakeDefaultRegistry(), clock);
  ASSERT_EQ(s.measurements.size(), 1u);
  EXPECT_FALSE(s.measurements[0].passed);
  EXPECT_NE(s.measurements[0].notes.find("npu"), std::string::npos);
}

TEST(SuiteIoTest, RoundTrip) {
  SimulatedClock clock({100, 50});
  SuiteConfig c = SmallConfig();
  c.tests = {4, 8, 9};
  SuiteResult s = RunSuite(c, MakeDefaultRegistry(), clock);
  std::istringstream in(SuiteText(s) + SuiteText(s));
  std::vector<SuiteResult> back = ReadSuites(in, "mem");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(SuiteText(back[1]), SuiteText(s));
}

TEST(SuiteIoTest, ErrorsNameLineAndField) {
  SuiteResult s;
  s.env.device_name = "d";
  s.env.soc_name = "s";
  nlohmann::json h = EnvironmentToJson(s.env);
  h.erase("soc_name");
  std::istringstream in(EnvironmentToJson(s.env).dump() + "\n" + h.dump());
  try {
    ReadSuites(in, "f.jsonl");
    FAIL();
  } catch (const BenchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_EQ(e.subject(), "f.jsonl:2");
    EXPECT_NE(std::string(e.what()).find("soc_name"), std::string::npos);
  }
  std::istringstream bad("{\"type\":\"measurement\"}");
  EXPECT_THROW(ReadSuites(bad, "x"), BenchError);
  std::istringstream junk("not json");
  EXPECT_THROW(ReadSuites(junk, "x"), BenchError);
  std::istringstream empty("");
  EXPECT_TRUE(ReadSuites(empty, "x").empty());
}

TEST(SuiteIoTest, RejectsInconsistentAverage) {
  Measurement m;
  m.test_id = 2;
  m.per_image_ms = {10, 10, 4};
  m.images_processed = 3;
  m.avg_ms = 8;
  m.passed = true;
  EXPECT_THROW(MeasurementFromJson(MeasurementToJson(m)), BenchError);
  m.avg_ms = 4;
  EXPECT_NO_THROW(MeasurementFromJson(MeasurementToJson(m)));
}

}  // namespace
}  // namespace infer_bench
