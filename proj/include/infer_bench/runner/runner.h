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

#ifndef INFER_BENCH_RUNNER_RUNNER_H_
#define INFER_BENCH_RUNNER_RUNNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infer_bench/dispatch/dispatch.h"
#include "infer_bench/runner/clock.h"
#include "infer_bench/zoo/workload.h"

namespace infer_bench {

struct Measurement {
  int test_id = 0;
  std::string backend_id;
  int64_t images_processed = 0;
  std::vector<double> per_image_ms;
  double avg_ms = 0.0;
  bool passed = false;
  double budget_s = 0.0;
  std::string notes;
  // Clock reading when the test started.
  double start_ms = 0.0;
  std::optional<DispatchDecision> dispatch;
};

enum class LimitingCause { kAllocationFailure, kConfiguredCap };

std::string LimitingCauseName(LimitingCause cause);
LimitingCause ParseLimitingCause(const std::string& name);

inline constexpr int kProbeUnitPx = 100;

struct MemoryProbeResult {
  // Largest side that ran, in units of 100 px.
  int max_resolution_units = 0;
  LimitingCause limiting_cause = LimitingCause::kConfiguredCap;
  // Predicted live activation bytes of the first size that did not run.
  int64_t bytes_at_limit = 0;
  std::string backend_id;
  int start_units = 1;
  int step_units = 1;
  int64_t mem_cap_bytes = 0;
};

// Averages per the protocol: the first two images are dropped when more than
// two were processed.
double ProtocolAverage(const std::vector<double>& per_image_ms);

// Runs one image per call; throws on failure.
using ImageFn = std::function<void(int64_t index)>;

// The timing protocol. Images start only while elapsed < budget; the image in
// flight at expiry completes and counts. Passed iff the first image finished
// within the budget. `prepare`, when set, runs before each image outside the
// per-image time. An exception from either ends the test with passed = false
// and the message in notes.
Measurement RunProtocol(const ImageFn& image, double budget_s, Clock& clock,
                        const ImageFn& prepare = {});

// The protocol on a workload: image i runs on a fresh input seeded from
// (workload seed, i); input generation is outside the timed region.
Measurement RunTest(const Workload& workload, const BackendKernels& kernels,
                    const std::string& backend_id, double budget_s,
                    Clock& clock);

struct ProbeOptions {
  int start_units = 1;
  int step_units = 1;
  int64_t mem_cap_bytes = 0;
  // Run each admitted size; when false only the analyzer is consulted.
  bool execute = true;
  uint64_t seed = kDefaultSeed;
  // Safety stop, reported as kConfiguredCap.
  int max_units = 1000;
};

// The SRCNN graph the probe runs at side 100 * units px.
Graph ProbeGraph(int units, uint64_t seed, bool with_weights);

// Escalates square SRCNN inputs of side 100 k px until the predicted live
// activation bytes exceed the cap or allocation fails; reports the last k that
// ran.
MemoryProbeResult RunMemoryProbe(const BackendKernels& kernels,
                                 const std::string& backend_id,
                                 const ProbeOptions& options);

// The cap-limited probe result computed from the analyzer alone.
int PredictProbeUnits(int start_units, int step_units, int64_t mem_cap_bytes,
                      int max_units = 1000);

}  // namespace infer_bench

#endif  // INFER_BENCH_RUNNER_RUNNER_H_
