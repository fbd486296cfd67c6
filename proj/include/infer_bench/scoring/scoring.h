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

#ifndef INFER_BENCH_SCORING_SCORING_H_
#define INFER_BENCH_SCORING_SCORING_H_

#include <array>
#include <optional>
#include <string>

#include "json.hpp"

#include "infer_bench/runner/suite.h"

namespace infer_bench {

inline constexpr int kTimedTests = 8;
inline constexpr double kDefaultTotal = 1000.0;

struct ReferenceProfile {
  std::string name;
  // Reference average runtimes of tests 1..8, milliseconds.
  std::array<double, kTimedTests> t_ref{};
  // Reference memory probe result, units of 100 px.
  double l_ref = 1.0;
  // Weights of tests 1..9.
  std::array<double, kNumTests> weights{};
};

// Throws kInvariantViolation (subject = field) on a bad profile.
void ValidateProfile(const ReferenceProfile& profile);

nlohmann::json ProfileToJson(const ReferenceProfile& profile);
ReferenceProfile ProfileFromJson(const nlohmann::json& j);
void SaveProfile(const ReferenceProfile& profile, const std::string& path);
ReferenceProfile LoadProfile(const std::string& path);

struct ScoreReport {
  std::string profile_name;
  std::array<double, kNumTests> points{};
  // Tests that failed or are missing; they contribute 0.
  std::array<bool, kNumTests> failed{};
  double total = 0.0;
};

// w[i] * t_ref[i] / avg_ms for a passed test, 0 otherwise.
double ScoreTest(const Measurement& m, const ReferenceProfile& profile);
// w[9] * units / l_ref.
double ScoreMemory(const MemoryProbeResult& r, const ReferenceProfile& profile);

// Per-test metrics from which a report is computed. A missing runtime marks a
// failed test.
struct SuiteMetrics {
  std::array<std::optional<double>, kTimedTests> avg_ms;
  std::optional<double> memory_units;
};

SuiteMetrics MetricsOf(const SuiteResult& suite);
ScoreReport ScoreMetrics(const SuiteMetrics& metrics,
                         const ReferenceProfile& profile);
ScoreReport AggregateScore(const SuiteResult& suite,
                           const ReferenceProfile& profile);

// Profile under which `suite` scores exactly `total`: its own runtimes and
// memory as references, equal weights total / 9. Every test must have passed.
ReferenceProfile CalibrateProfile(const SuiteResult& suite, double total,
                                  const std::string& name);

nlohmann::json ReportToJson(const ScoreReport& report);

}  // namespace infer_bench

#endif  // INFER_BENCH_SCORING_SCORING_H_
