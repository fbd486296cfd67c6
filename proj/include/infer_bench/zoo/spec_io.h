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

#ifndef INFER_BENCH_ZOO_SPEC_IO_H_
#define INFER_BENCH_ZOO_SPEC_IO_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "infer_bench/zoo/workload.h"

namespace infer_bench {

// Workload spec files are UTF-8 JSON objects:
//   {"test_id", "name", "architecture", "input_resolution": [h, w],
//    "quantized", "accelerator_eligible", "time_budget_s" (number or null),
//    "scale", "seed", "layers": [node, ...]}
// Each node is {"id", "op", "inputs", ...} plus the attributes its op uses:
// "kernel": [kh, kw], "out_channels", "stride": [sh, sw], "padding",
// "activation", "pool", "window": [h, w], "size": [h, w], "weights":
// [filter, bias].
nlohmann::json NodeToJson(const OperatorNode& node);
OperatorNode NodeFromJson(const nlohmann::json& j);

nlohmann::json SpecToJson(const WorkloadSpec& spec);
// Parses and validates; errors are kParse (malformed, subject = field) or
// kInvariantViolation (well-formed but breaking a workload invariant).
WorkloadSpec SpecFromJson(const nlohmann::json& j);

void SaveSpec(const WorkloadSpec& spec, const std::string& path);
WorkloadSpec LoadSpec(const std::string& path);

// The spec with its layers filled from the architecture builder.
WorkloadSpec WithLayers(WorkloadSpec spec);

}  // namespace infer_bench

#endif  // INFER_BENCH_ZOO_SPEC_IO_H_
