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

#include "infer_bench/scoring/scoring.h"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/json_fields.h"

namespace infer_bench {

using nlohmann::json;

namespace {

[[noreturn]] void Violation(const std::string& field, const std::string& msg) {
  throw BenchError(ErrorKind::kInvariantViolation, field, msg);
}

// Compensated (Neumaier) sum, so nine equal shares add back to their total.
double Sum(const std::array<double, kNumTests>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

double TestPoints(int test_id, double avg_ms, const ReferenceProfile& p) {
  if (!(avg_ms > 0.0) || !std::isfinite(avg_ms)) {
    throw BenchError(ErrorKind::kInvalidArgument, "avg_ms",
                     fmt::format("test {}: average runtime must be positive, "
                                 "got {}", test_id, avg_ms));
  }
  return p.weights[test_id - 1] * (p.t_ref[test_id - 1] / avg_ms);
}

double MemoryPoints(double units, const ReferenceProfile& p) {
  return p.weights[kNumTests - 1] * (units / p.l_ref);
}

}  // namespace

void ValidateProfile(const ReferenceProfile& p) {
  if (p.name.empty()) Violation("name", "profile name is empty");
  for (int i = 0; i < kTimedTests; ++i) {
    if (!(p.t_ref[i] > 0.0) || !std::isfinite(p.t_ref[i])) {
      Violation("t_ref", fmt::format("t_ref[{}] must be positive", i + 1));
    }
  }
  if (!(p.l_ref >= 1.0) || !std::isfinite(p.l_ref)) {
    Violation("l_ref", "l_ref must be at least 1");
  }
  bool any = false;
  for (double w : p.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      Violation("weights", "weights must be non-negative");
    }
    any = any || w > 0.0;
  }
  if (!any) Violation("weights", "at least one weight must be positive");
}

json ProfileToJson(const ReferenceProfile& p) {
  return json{{"name", p.name},
              {"t_ref", p.t_ref},
              {"l_ref", p.l_ref},
              {"weights", p.weights}};
}

ReferenceProfile ProfileFromJson(const json& j) {
  using json_fields::As;
  using json_fields::Number;
  using json_fields::ParseError;
  ReferenceProfile p;
  p.name = As<std::string>(j, "name");
  const auto t_ref = As<std::vector<double>>(j, "t_ref");
  if (t_ref.size() != kTimedTests) {
    ParseError("t_ref", fmt::format("t_ref needs {} entries", kTimedTests));
  }
  std::copy(t_ref.begin(), t_ref.end(), p.t_ref.begin());
  p.l_ref = Number(j, "l_ref");
  const auto weights = As<std::vector<double>>(j, "weights");
  if (weights.size() != kNumTests) {
    ParseError("weights", fmt::format("weights needs {} entries", kNumTests));
  }
  std::copy(weights.begin(), weights.end(), p.weights.begin());
  ValidateProfile(p);
  return p;
}

void SaveProfile(const ReferenceProfile& p, const std::string& path) {
  ValidateProfile(p);
  std::ofstream out(path);
  if (!out) throw BenchError(ErrorKind::kIo, path, "cannot open for writing");
  out << ProfileToJson(p).dump(2) << '\n';
  out.flush();
  if (!out) throw BenchError(ErrorKind::kIo, path, "write failed");
}

ReferenceProfile LoadProfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BenchError(ErrorKind::kIo, path, "cannot open for reading");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw BenchError(ErrorKind::kParse, path,
                     fmt::format("malformed profile: {}", e.what()));
  }
  return ProfileFromJson(j);
}

double ScoreTest(const Measurement& m, const ReferenceProfile& profile) {
  if (m.test_id < 1 || m.test_id > kTimedTests) {
    throw BenchError(ErrorKind::kInvalidArgument, "test_id",
                     fmt::format("no timed test {}", m.test_id));
  }
  if (!m.passed) return 0.0;
  return TestPoints(m.test_id, m.avg_ms, profile);
}

double ScoreMemory(const MemoryProbeResult& r,
                   const ReferenceProfile& profile) {
  return MemoryPoints(r.max_resolution_units, profile);
}

SuiteMetrics MetricsOf(const SuiteResult& suite) {
  SuiteMetrics metrics;
  for (int t = 1; t <= kTimedTests; ++t) {
    const Measurement* m = suite.Find(t);
    if (m && m->passed) metrics.avg_ms[t - 1] = m->avg_ms;
  }
  if (suite.memory) metrics.memory_units = suite.memory->max_resolution_units;
  return metrics;
}

ScoreReport ScoreMetrics(const SuiteMetrics& metrics,
                         const ReferenceProfile& profile) {
  ValidateProfile(profile);
  ScoreReport r;
  r.profile_name = profile.name;
  for (int t = 1; t <= kTimedTests; ++t) {
    const auto& avg = metrics.avg_ms[t - 1];
    r.failed[t - 1] = !avg.has_value();
    r.points[t - 1] = avg ? TestPoints(t, *avg, profile) : 0.0;
  }
  const bool has_memory = metrics.memory_units && *metrics.memory_units > 0;
  r.failed[kNumTests - 1] = !has_memory;
  r.points[kNumTests - 1] =
      has_memory ? MemoryPoints(*metrics.memory_units, profile) : 0.0;
  r.total = Sum(r.points);
  return r;
}

ScoreReport AggregateScore(const SuiteResult& suite,
                           const ReferenceProfile& profile) {
  return ScoreMetrics(MetricsOf(suite), profile);
}

ReferenceProfile CalibrateProfile(const SuiteResult& suite, double total,
                                  const std::string& name) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw BenchError(ErrorKind::kInvalidArgument, "total",
                     "calibration total must be positive");
  }
  ReferenceProfile p;
  p.name = name;
  for (int t = 1; t <= kTimedTests; ++t) {
    const Measurement* m = suite.Find(t);
    if (!m || !m->passed) {
      throw BenchError(ErrorKind::kInvariantViolation, fmt::format("test{}", t),
                       fmt::format("cannot calibrate: test {} {}", t,
                                   m ? "failed" : "is missing"));
    }
    p.t_ref[t - 1] = m->avg_ms;
  }
  if (!suite.memory || suite.memory->max_resolution_units < 1) {
    throw BenchError(ErrorKind::kInvariantViolation, "test9",
                     "cannot calibrate: the memory probe reached no size");
  }
  p.l_ref = suite.memory->max_resolution_units;
  p.weights.fill(total / kNumTests);
  ValidateProfile(p);
  return p;
}

json ReportToJson(const ScoreReport& r) {
  return json{{"profile", r.profile_name},
              {"points", r.points},
              {"failed", r.failed},
              {"total", r.total}};
}

}  // namespace infer_bench
