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

#ifndef INFER_BENCH_GRAPH_ANALYZERS_H_
#define INFER_BENCH_GRAPH_ANALYZERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

// All analyzers are pure functions of the graph (its input shape included).
// One multiply-accumulate counts as 1 MAC; bias adds are not counted.

// Weight tensor plus bias elements. Uses the attached weights when present,
// otherwise the shapes the nodes expect.
int64_t CountParams(const Graph& graph);

// conv: Hout*Wout*kh*kw*Cin*Cout; depthwise: Hout*Wout*kh*kw*C;
// fully connected: rows*cols; everything else 0.
int64_t CountMacs(const Graph& graph);

// Elementary operations of the non-MAC ops: pool window reads, 4 taps per
// resized element, one per add/relu/concat element, three per softmax element.
int64_t CountOtherOps(const Graph& graph);

// Largest number of activation bytes live at once when nodes run in order and
// dead buffers are released immediately. Weights are not included.
int64_t PeakActivationBytes(const Graph& graph);

int64_t ActivationElementBytes(DType dtype);

struct LayerRow {
  std::string id;
  OpKind kind;
  Shape output;
  int64_t params = 0;
  int64_t macs = 0;
};

std::vector<LayerRow> LayerTable(const Graph& graph);

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_ANALYZERS_H_
