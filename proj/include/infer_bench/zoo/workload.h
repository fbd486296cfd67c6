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

#ifndef INFER_BENCH_ZOO_WORKLOAD_H_
#define INFER_BENCH_ZOO_WORKLOAD_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

inline constexpr int kNumTests = 9;
inline constexpr int kMemoryProbeTest = 9;
inline constexpr uint64_t kDefaultSeed = 42;

struct WorkloadSpec {
  int test_id = 0;
  std::string name;
  // Builder id, see architectures.h.
  std::string architecture;
  int input_h = 0;
  int input_w = 0;
  bool quantized = false;
  bool accelerator_eligible = false;
  // Absent for the memory probe.
  std::optional<double> time_budget_s;
  double scale = 1.0;
  uint64_t seed = kDefaultSeed;
  // Optional explicit node list; when present it must describe the float
  // graph the builder produces for this spec.
  std::vector<OperatorNode> layers;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&);
};

// Full-size spec for `test_id` (1..9).
WorkloadSpec DefaultSpec(int test_id, uint64_t seed = kDefaultSeed);

// Spec at `scale` in (0, 1]: each side becomes round(side * scale / 8) * 8,
// clamped below by MinResolution, and the budget is multiplied by scale.
WorkloadSpec ScaledSpec(int test_id, double scale,
                        uint64_t seed = kDefaultSeed);

// Smallest side (height; width scales alongside) the architecture accepts.
int MinResolution(int test_id);

// Throws kInvariantViolation (subject = field) when the spec breaks a
// workload invariant, e.g. quantized on a test other than 1.
void ValidateWorkloadSpec(const WorkloadSpec& spec);

struct Workload {
  WorkloadSpec spec;
  // The graph that is timed: int8 for quantized specs, float otherwise.
  Graph graph;
  // The float graph before quantization (equals `graph` for float specs).
  Graph float_graph;
};

struct InstantiateOptions {
  // Structure-only graphs for analysis; quantized specs stay float.
  bool with_weights = true;
};

Workload Instantiate(const WorkloadSpec& spec,
                     const InstantiateOptions& options = {});
Workload Instantiate(int test_id, double scale, uint64_t seed = kDefaultSeed,
                     const InstantiateOptions& options = {});

// Uniform [0, 1) float image of the spec's resolution, deterministic in seed.
Tensor GenerateInput(const WorkloadSpec& spec, uint64_t seed);

// The graph's input: GenerateInput, quantized with the graph's input
// parameters for int8 graphs.
Tensor GenerateGraphInput(const Workload& workload, uint64_t seed);

// Input quantization used for int8 graphs: [0, 1] in 256 steps.
QuantParams ImageInputQParams();

}  // namespace infer_bench

#endif  // INFER_BENCH_ZOO_WORKLOAD_H_
