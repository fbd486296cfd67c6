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

#ifndef INFER_BENCH_GRAPH_EXECUTE_H_
#define INFER_BENCH_GRAPH_EXECUTE_H_

#include <cstdint>
#include <functional>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

struct NodeEvent {
  size_t index = 0;
  const OperatorNode* node = nullptr;
  const Tensor* output = nullptr;
  // Activation bytes live while this node ran: its inputs, its output and
  // every buffer still awaiting a consumer.
  int64_t live_bytes = 0;
};

using NodeObserver = std::function<void(const NodeEvent&)>;

// Evaluates nodes in order. The input is taken by value so it can be released
// after its last consumer, like every other dead buffer. Kernel errors are
// rethrown with the node id as subject.
Tensor Execute(const Graph& graph, Tensor input, const BackendKernels& kernels,
               const NodeObserver& observer = {});

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_EXECUTE_H_
