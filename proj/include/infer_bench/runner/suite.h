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

#ifndef INFER_BENCH_RUNNER_SUITE_H_
#define INFER_BENCH_RUNNER_SUITE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "infer_bench/dispatch/dispatch.h"
#include "infer_bench/runner/runner.h"

namespace infer_bench {

inline constexpr char kSuiteFormat[] = "infer-bench-suite/1";
inline constexpr int64_t kDefaultMemCapBytes = int64_t{256} << 20;

struct SuiteEnvironment {
  std::string host_id;
  std::string device_name;
  std::string soc_name;
  double ram_gb = 0.0;
  std::string backend = kAutoBackend;
  int threads = 1;
  double scale = 1.0;
  uint64_t seed = kDefaultSeed;
  int64_t mem_cap_bytes = kDefaultMemCapBytes;
  double budget_scale = 1.0;
};

struct SuiteConfig {
  SuiteEnvironment env;
  // Tests to run among 1..9; empty means all nine.
  std::vector<int> tests;
  int probe_start_units = 1;
  int probe_step_units = 1;
  bool probe_execute = true;
};

struct SuiteResult {
  SuiteEnvironment env;
  std::vector<Measurement> measurements;
  std::optional<MemoryProbeResult> memory;

  const Measurement* Find(int test_id) const;
};

// The suite's dispatch rule for one workload: accelerator-eligible tests
// prefer `requested` (resolved through "auto"), the rest are forced to the
// reference backend.
DispatchDecision DecideBackend(const Workload& workload,
                               const BackendRegistry& registry,
                               const std::string& requested);

// Progress callback, invoked after each test.
using SuiteObserver = std::function<void(const std::string& line)>;

// Runs the configured tests. Eligible tests prefer env.backend; tests that are
// not accelerator-eligible run on the reference backend (forced_by_flag).
// The probe cap is mem_cap_bytes * scale^2. Failures are recorded, never
// thrown.
SuiteResult RunSuite(const SuiteConfig& config, const BackendRegistry& registry,
                     Clock& clock, const SuiteObserver& observer = {});

nlohmann::json EnvironmentToJson(const SuiteEnvironment& env);
SuiteEnvironment EnvironmentFromJson(const nlohmann::json& j);
nlohmann::json MeasurementToJson(const Measurement& m);
Measurement MeasurementFromJson(const nlohmann::json& j);
nlohmann::json ProbeToJson(const MemoryProbeResult& r);
MemoryProbeResult ProbeFromJson(const nlohmann::json& j);

// JSONL: a header line ("type": "header") then one line per measurement and
// memory probe.
void WriteSuite(const SuiteResult& suite, std::ostream& out);
void SaveSuite(const SuiteResult& suite, const std::string& path);

// Reads every suite in a JSONL stream; each header line starts a new suite.
// Errors are kParse with subject "<source>:<line>".
std::vector<SuiteResult> ReadSuites(std::istream& in,
                                    const std::string& source);
std::vector<SuiteResult> LoadSuites(const std::string& path);

}  // namespace infer_bench

#endif  // INFER_BENCH_RUNNER_SUITE_H_
