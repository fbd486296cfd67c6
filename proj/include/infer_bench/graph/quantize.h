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

#ifndef INFER_BENCH_GRAPH_QUANTIZE_H_
#define INFER_BENCH_GRAPH_QUANTIZE_H_

#include "infer_bench/graph/graph.h"

namespace infer_bench {

// Post-training quantization of a float graph. The graph is run once on
// `calibration_input` with `kernels`; each node's observed output range
// fixes its out_qp. Filters get per-tensor parameters from their own range,
// biases become int32 in units of input_scale * filter_scale. Pool, relu and
// resize inherit their input's parameters; softmax outputs use scale 1/256,
// zero point -128.
GraphSpec QuantizeGraph(const Graph& float_graph,
                        const Tensor& calibration_input,
                        const BackendKernels& kernels,
                        const QuantParams& input_qp);

inline constexpr QuantParams kSoftmaxOutputQParams{1.0f / 256.0f, -128};

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_QUANTIZE_H_
