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

#include "infer_bench/runner/suite.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/json_fields.h"

namespace infer_bench {

using nlohmann::json;
using json_fields::As;
using json_fields::Field;
using json_fields::NonEmptyString;
using json_fields::Number;
using json_fields::ParseError;

namespace {

void CheckEnvironment(const SuiteEnvironment& env) {
  if (!(env.scale > 0.0 && env.scale <= 1.0)) {
    throw BenchError(ErrorKind::kInvalidArgument, "scale",
                     fmt::format("scale must be in (0, 1], got {}", env.scale));
  }
  if (env.threads < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, "threads",
                     "threads must be at least 1");
  }
  if (!(env.budget_scale > 0.0) || !std::isfinite(env.budget_scale)) {
    throw BenchError(ErrorKind::kInvalidArgument, "budget_scale",
                     "budget scale must be positive");
  }
  if (env.mem_cap_bytes < 0) {
    throw BenchError(ErrorKind::kInvalidArgument, "mem_cap_bytes",
                     "memory cap must be non-negative");
  }
}

std::string Summary(const Measurement& m) {
  return fmt::format("test {}: {} images, avg {:.2f} ms on {}{}", m.test_id,
                     m.images_processed, m.avg_ms, m.backend_id,
                     m.passed ? "" : " (failed)");
}

}  // namespace

const Measurement* SuiteResult::Find(int test_id) const {
  for (const Measurement& m : measurements) {
    if (m.test_id == test_id) return &m;
  }
  return nullptr;
}

DispatchDecision DecideBackend(const Workload& workload,
                               const BackendRegistry& registry,
                               const std::string& requested) {
  const std::string preferred =
      ResolvePreferred(requested, workload.graph.dtype());
  return workload.spec.accelerator_eligible
             ? registry.Select(workload.graph, preferred)
             : registry.ForceReference(preferred);
}

SuiteResult RunSuite(const SuiteConfig& config, const BackendRegistry& registry,
                     Clock& clock, const SuiteObserver& observer) {
  const SuiteEnvironment& env = config.env;
  CheckEnvironment(env);
  std::vector<int> tests = config.tests;
  if (tests.empty()) {
    for (int t = 1; t <= kNumTests; ++t) tests.push_back(t);
  }
  SuiteResult result;
  result.env = env;
  for (int t : tests) {
    if (t < 1 || t > kNumTests) {
      throw BenchError(ErrorKind::kInvalidArgument, "tests",
                       fmt::format("no test {}", t));
    }
    if (t == kMemoryProbeTest) continue;
    Measurement m;
    try {
      const Workload w = Instantiate(t, env.scale, env.seed);
      const DispatchDecision d = DecideBackend(w, registry, env.backend);
      m = RunTest(w, registry.kernels(d.chosen_backend_id),
                  d.chosen_backend_id, *w.spec.time_budget_s * env.budget_scale,
                  clock);
      m.dispatch = d;
    } catch (const std::exception& e) {
      m = Measurement{};
      m.test_id = t;
      m.notes = e.what();
      m.start_ms = clock.NowMs();
    }
    if (observer) observer(Summary(m));
    result.measurements.push_back(std::move(m));
  }
  if (std::find(tests.begin(), tests.end(), kMemoryProbeTest) != tests.end()) {
    const std::string preferred = ResolvePreferred(env.backend,
                                                   DType::kFloat32);
    ProbeOptions opts;
    opts.start_units = config.probe_start_units;
    opts.step_units = config.probe_step_units;
    opts.mem_cap_bytes = static_cast<int64_t>(std::floor(
        static_cast<double>(env.mem_cap_bytes) * env.scale * env.scale));
    opts.execute = config.probe_execute;
    opts.seed = env.seed;
    MemoryProbeResult r;
    try {
      const DispatchDecision d =
          registry.Select(ProbeGraph(opts.start_units, env.seed, false),
                          preferred);
      r = RunMemoryProbe(registry.kernels(d.chosen_backend_id),
                         d.chosen_backend_id, opts);
    } catch (const std::exception& e) {
      r = MemoryProbeResult{};
      r.start_units = opts.start_units;
      r.step_units = opts.step_units;
      r.mem_cap_bytes = opts.mem_cap_bytes;
    }
    if (observer) {
      observer(fmt::format("test 9: {} units ({})", r.max_resolution_units,
                           LimitingCauseName(r.limiting_cause)));
    }
    result.memory = r;
  }
  return result;
}

json EnvironmentToJson(const SuiteEnvironment& env) {
  return json{{"type", "header"},
              {"format", kSuiteFormat},
              {"host_id", env.host_id},
              {"device_name", env.device_name},
              {"soc_name", env.soc_name},
              {"ram_gb", env.ram_gb},
              {"backend", env.backend},
              {"threads", env.threads},
              {"scale", env.scale},
              {"seed", env.seed},
              {"mem_cap_bytes", env.mem_cap_bytes},
              {"budget_scale", env.budget_scale}};
}

SuiteEnvironment EnvironmentFromJson(const json& j) {
  if (As<std::string>(j, "format") != kSuiteFormat) {
    ParseError("format", fmt::format("unsupported format '{}'",
                                     As<std::string>(j, "format")));
  }
  SuiteEnvironment env;
  env.host_id = As<std::string>(j, "host_id");
  env.device_name = NonEmptyString(j, "device_name");
  env.soc_name = NonEmptyString(j, "soc_name");
  env.ram_gb = Number(j, "ram_gb");
  env.backend = NonEmptyString(j, "backend");
  env.threads = As<int>(j, "threads");
  env.scale = Number(j, "scale");
  env.seed = As<uint64_t>(j, "seed");
  env.mem_cap_bytes = As<int64_t>(j, "mem_cap_bytes");
  env.budget_scale = Number(j, "budget_scale");
  try {
    CheckEnvironment(env);
  } catch (const BenchError& e) {
    ParseError(e.subject(), e.what());
  }
  if (env.ram_gb < 0) ParseError("ram_gb", "ram_gb must be non-negative");
  return env;
}

json MeasurementToJson(const Measurement& m) {
  json j{{"type", "measurement"},
         {"test_id", m.test_id},
         {"backend_id", m.backend_id},
         {"images_processed", m.images_processed},
         {"per_image_ms", m.per_image_ms},
         {"avg_ms", m.avg_ms},
         {"passed", m.passed},
         {"budget_s", m.budget_s},
         {"notes", m.notes},
         {"start_ms", m.start_ms}};
  if (m.dispatch) {
    const DispatchDecision& d = *m.dispatch;
    json dj{{"preferred", d.preferred_backend_id},
            {"chosen", d.chosen_backend_id},
            {"reason", DispatchReasonName(d.reason)}};
    if (!d.node_id.empty()) dj["node_id"] = d.node_id;
    if (d.op_kind) dj["op"] = std::string(OpKindName(*d.op_kind));
    j["dispatch"] = dj;
  }
  return j;
}

Measurement MeasurementFromJson(const json& j) {
  Measurement m;
  m.test_id = As<int>(j, "test_id");
  if (m.test_id < 1 || m.test_id > 8) {
    ParseError("test_id", fmt::format("measurement test_id must be 1..8, "
                                      "got {}", m.test_id));
  }
  m.backend_id = As<std::string>(j, "backend_id");
  m.images_processed = As<int64_t>(j, "images_processed");
  m.per_image_ms = As<std::vector<double>>(j, "per_image_ms");
  m.avg_ms = Number(j, "avg_ms");
  m.passed = As<bool>(j, "passed");
  m.budget_s = Number(j, "budget_s");
  m.notes = As<std::string>(j, "notes");
  m.start_ms = Number(j, "start_ms");
  if (m.images_processed != static_cast<int64_t>(m.per_image_ms.size())) {
    ParseError("images_processed",
               "images_processed differs from the per_image_ms count");
  }
  for (double v : m.per_image_ms) {
    if (!(v >= 0.0)) ParseError("per_image_ms", "negative image time");
  }
  const double expect = ProtocolAverage(m.per_image_ms);
  if (std::abs(m.avg_ms - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
    ParseError("avg_ms", fmt::format("avg_ms {} does not match the protocol "
                                     "average {}", m.avg_ms, expect));
  }
  if (m.passed && m.per_image_ms.empty()) {
    ParseError("passed", "a passed measurement needs at least one image");
  }
  if (j.contains("dispatch")) {
    const json& dj = j.at("dispatch");
    DispatchDecision d;
    d.preferred_backend_id = As<std::string>(dj, "preferred");
    d.chosen_backend_id = As<std::string>(dj, "chosen");
    try {
      d.reason = ParseDispatchReason(As<std::string>(dj, "reason"));
      if (dj.contains("op")) d.op_kind = ParseOpKind(As<std::string>(dj, "op"));
    } catch (const BenchError& e) {
      ParseError("dispatch", e.what());
    }
    if (dj.contains("node_id")) d.node_id = As<std::string>(dj, "node_id");
    m.dispatch = d;
  }
  return m;
}

json ProbeToJson(const MemoryProbeResult& r) {
  return json{{"type", "memory_probe"},
              {"test_id", kMemoryProbeTest},
              {"backend_id", r.backend_id},
              {"max_resolution_units", r.max_resolution_units},
              {"limiting_cause", LimitingCauseName(r.limiting_cause)},
              {"bytes_at_limit", r.bytes_at_limit},
              {"start_units", r.start_units},
              {"step_units", r.step_units},
              {"mem_cap_bytes", r.mem_cap_bytes}};
}

MemoryProbeResult ProbeFromJson(const json& j) {
  MemoryProbeResult r;
  r.backend_id = As<std::string>(j, "backend_id");
  r.max_resolution_units = As<int>(j, "max_resolution_units");
  if (r.max_resolution_units < 0) {
    ParseError("max_resolution_units", "must be non-negative");
  }
  try {
    r.limiting_cause = ParseLimitingCause(As<std::string>(j, "limiting_cause"));
  } catch (const BenchError& e) {
    ParseError("limiting_cause", e.what());
  }
  r.bytes_at_limit = As<int64_t>(j, "bytes_at_limit");
  r.start_units = As<int>(j, "start_units");
  r.step_units = As<int>(j, "step_units");
  r.mem_cap_bytes = As<int64_t>(j, "mem_cap_bytes");
  return r;
}

void WriteSuite(const SuiteResult& suite, std::ostream& out) {
  out << EnvironmentToJson(suite.env).dump() << '\n';
  for (const Measurement& m : suite.measurements) {
    out << MeasurementToJson(m).dump() << '\n';
  }
  if (suite.memory) out << ProbeToJson(*suite.memory).dump() << '\n';
}

void SaveSuite(const SuiteResult& suite, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw BenchError(ErrorKind::kIo, path, "cannot open for writing");
  }
  WriteSuite(suite, out);
  out.flush();
  if (!out) throw BenchError(ErrorKind::kIo, path, "write failed");
}

std::vector<SuiteResult> ReadSuites(std::istream& in,
                                    const std::string& source) {
  std::vector<SuiteResult> suites;
  std::string line;
  for (int64_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = fmt::format("{}:{}", source, n);
    try {
      const json j = json::parse(line);
      const std::string type = As<std::string>(j, "type");
      if (type == "header") {
        suites.push_back(SuiteResult{EnvironmentFromJson(j), {}, {}});
        continue;
      }
      if (suites.empty()) {
        ParseError("type", "entry before the first header line");
      }
      SuiteResult& s = suites.back();
      if (type == "measurement") {
        Measurement m = MeasurementFromJson(j);
        if (s.Find(m.test_id)) {
          ParseError("test_id", fmt::format("duplicate test {}", m.test_id));
        }
        s.measurements.push_back(std::move(m));
      } else if (type == "memory_probe") {
        if (s.memory) ParseError("type", "duplicate memory_probe entry");
        s.memory = ProbeFromJson(j);
      } else {
        ParseError("type", fmt::format("unknown entry type '{}'", type));
      }
    } catch (const json::exception& e) {
      throw BenchError(ErrorKind::kParse, where,
                       fmt::format("line {}: malformed JSON: {}", n, e.what()));
    } catch (const BenchError& e) {
      throw BenchError(ErrorKind::kParse, where,
                       fmt::format("line {}: field '{}': {}", n, e.subject(),
                                   e.what()));
    }
  }
  return suites;
}

std::vector<SuiteResult> LoadSuites(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BenchError(ErrorKind::kIo, path, "cannot open for reading");
  return ReadSuites(in, path);
}

}  // namespace infer_bench
