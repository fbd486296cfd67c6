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

#include "infer_bench/runner/runner.h"

#include <new>
#include <numeric>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/splitmix.h"
#include "infer_bench/graph/analyzers.h"
#include "infer_bench/graph/execute.h"
#include "infer_bench/zoo/architectures.h"

namespace infer_bench {
namespace {

constexpr uint64_t kImageSalt = 0x1A6E;

}  // namespace

std::string LimitingCauseName(LimitingCause cause) {
  return cause == LimitingCause::kAllocationFailure ? "allocation_failure"
                                                    : "configured_cap";
}

LimitingCause ParseLimitingCause(const std::string& name) {
  if (name == "allocation_failure") return LimitingCause::kAllocationFailure;
  if (name == "configured_cap") return LimitingCause::kConfiguredCap;
  throw BenchError(ErrorKind::kParse, "limiting_cause",
                   fmt::format("unknown limiting cause '{}'", name));
}

double ProtocolAverage(const std::vector<double>& per_image_ms) {
  if (per_image_ms.empty()) return 0.0;
  const size_t skip = per_image_ms.size() > 2 ? 2 : 0;
  const double sum =
      std::accumulate(per_image_ms.begin() + skip, per_image_ms.end(), 0.0);
  return sum / static_cast<double>(per_image_ms.size() - skip);
}

Measurement RunProtocol(const ImageFn& image, double budget_s, Clock& clock,
                        const ImageFn& prepare) {
  if (!(budget_s > 0.0)) {
    throw BenchError(ErrorKind::kInvalidArgument, "budget_s",
                     fmt::format("budget must be positive, got {}", budget_s));
  }
  Measurement m;
  m.budget_s = budget_s;
  const double budget_ms = budget_s * 1000.0;
  const double start = clock.NowMs();
  m.start_ms = start;
  bool failed = false;
  for (int64_t i = 0; clock.NowMs() - start < budget_ms; ++i) {
    double t0 = 0.0;
    try {
      if (prepare) prepare(i);
      t0 = clock.NowMs();
      image(i);
    } catch (const std::exception& e) {
      m.notes = fmt::format("image {} failed: {}", i, e.what());
      failed = true;
      break;
    }
    clock.OnImageEnd(i);
    m.per_image_ms.push_back(clock.NowMs() - t0);
  }
  m.images_processed = static_cast<int64_t>(m.per_image_ms.size());
  m.avg_ms = ProtocolAverage(m.per_image_ms);
  m.passed = !failed && !m.per_image_ms.empty() &&
             m.per_image_ms.front() <= budget_ms;
  if (!failed && !m.passed) {
    m.notes = fmt::format("first image took {:.1f} ms, budget {:.1f} ms",
                          m.per_image_ms.front(), budget_ms);
  }
  return m;
}

Measurement RunTest(const Workload& workload, const BackendKernels& kernels,
                    const std::string& backend_id, double budget_s,
                    Clock& clock) {
  Tensor next;
  Measurement m = RunProtocol(
      [&](int64_t) { Execute(workload.graph, std::move(next), kernels); },
      budget_s, clock,
      [&](int64_t i) {
        next = GenerateGraphInput(
            workload, MixSeed(workload.spec.seed, kImageSalt + i));
      });
  m.test_id = workload.spec.test_id;
  m.backend_id = backend_id;
  return m;
}

Graph ProbeGraph(int units, uint64_t seed, bool with_weights) {
  const int side = units * kProbeUnitPx;
  GraphSpec spec = BuildArchitecture(kSrcnn, side, side, seed, with_weights);
  return with_weights ? Validate(std::move(spec))
                      : ValidateStructure(std::move(spec));
}

namespace {

void CheckProbeArgs(int start_units, int step_units, int64_t mem_cap_bytes) {
  if (start_units < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, "start_units",
                     "probe must start at 1 unit or more");
  }
  if (step_units < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, "step_units",
                     "probe step must be at least 1 unit");
  }
  if (mem_cap_bytes < 0) {
    throw BenchError(ErrorKind::kInvalidArgument, "mem_cap_bytes",
                     "memory cap must be non-negative");
  }
}

}  // namespace

int PredictProbeUnits(int start_units, int step_units, int64_t mem_cap_bytes,
                      int max_units) {
  CheckProbeArgs(start_units, step_units, mem_cap_bytes);
  int last = 0;
  for (int k = start_units; k <= max_units; k += step_units) {
    if (PeakActivationBytes(ProbeGraph(k, 0, false)) > mem_cap_bytes) break;
    last = k;
  }
  return last;
}

MemoryProbeResult RunMemoryProbe(const BackendKernels& kernels,
                                 const std::string& backend_id,
                                 const ProbeOptions& options) {
  CheckProbeArgs(options.start_units, options.step_units,
                 options.mem_cap_bytes);
  MemoryProbeResult r;
  r.backend_id = backend_id;
  r.start_units = options.start_units;
  r.step_units = options.step_units;
  r.mem_cap_bytes = options.mem_cap_bytes;
  for (int k = options.start_units;; k += options.step_units) {
    if (k > options.max_units) {
      r.limiting_cause = LimitingCause::kConfiguredCap;
      r.bytes_at_limit = PeakActivationBytes(ProbeGraph(k, 0, false));
      return r;
    }
    const int64_t predicted = PeakActivationBytes(ProbeGraph(k, 0, false));
    if (predicted > options.mem_cap_bytes) {
      r.limiting_cause = LimitingCause::kConfiguredCap;
      r.bytes_at_limit = predicted;
      return r;
    }
    if (options.execute) {
      try {
        Graph g = ProbeGraph(k, options.seed, true);
        WorkloadSpec spec = DefaultSpec(kMemoryProbeTest, options.seed);
        spec.input_h = spec.input_w = k * kProbeUnitPx;
        Execute(g, GenerateInput(spec, MixSeed(options.seed, kImageSalt)),
                kernels);
      } catch (const std::bad_alloc&) {
        r.limiting_cause = LimitingCause::kAllocationFailure;
        r.bytes_at_limit = predicted;
        return r;
      }
    }
    r.max_resolution_units = k;
  }
}

}  // namespace infer_bench
