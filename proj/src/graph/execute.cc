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

#include "infer_bench/graph/execute.h"

#include <optional>
#include <vector>

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

namespace {

ConvParams ToConvParams(const NodeAttrs& a) {
  return ConvParams{a.stride_h, a.stride_w, a.padding, a.activation};
}

Tensor RunNode(const OperatorNode& node, const Graph::Resolved& r,
               std::span<const Tensor* const> in,
               const BackendKernels& kernels) {
  const NodeAttrs& a = node.attrs;
  switch (node.kind) {
    case OpKind::kConv2D:
      return kernels.Conv2D(*in[0], *r.filter, *r.bias, ToConvParams(a),
                            a.out_qp);
    case OpKind::kDepthwiseConv2D:
      return kernels.DepthwiseConv2D(*in[0], *r.filter, *r.bias,
                                     ToConvParams(a), a.out_qp);
    case OpKind::kFullyConnected:
      return kernels.FullyConnected(*in[0], *r.filter, *r.bias, a.activation,
                                    a.out_qp);
    case OpKind::kPool:
      return kernels.Pool(*in[0], PoolParams{a.pool_kind, a.window_h,
                                             a.window_w, a.stride_h,
                                             a.stride_w, a.padding});
    case OpKind::kResizeBilinear:
      return kernels.ResizeBilinear(*in[0], a.out_h, a.out_w);
    case OpKind::kAdd:
      return kernels.Add(*in[0], *in[1], a.out_qp);
    case OpKind::kRelu:
      return kernels.Relu(*in[0]);
    case OpKind::kConcat:
      return kernels.Concat(in, a.out_qp);
    case OpKind::kSoftmax:
      return kernels.Softmax(*in[0], a.out_qp);
  }
  throw BenchError(ErrorKind::kUnsupportedOp, node.id, "unknown op kind");
}

}  // namespace

Tensor Execute(const Graph& graph, Tensor input, const BackendKernels& kernels,
               const NodeObserver& observer) {
  if (!graph.has_weights()) {
    throw BenchError(ErrorKind::kMissingWeight, graph.name(),
                     fmt::format("graph '{}' was validated without weights "
                                 "and cannot be executed",
                                 graph.name()));
  }
  if (input.shape() != graph.input_shape()) {
    throw BenchError(ErrorKind::kShapeMismatch, graph.spec().input_id,
                     fmt::format("input shape {} != graph input {}",
                                 input.shape().ToString(),
                                 graph.input_shape().ToString()));
  }
  if (input.dtype() != graph.dtype()) {
    throw BenchError(ErrorKind::kDTypeMismatch, graph.spec().input_id,
                     fmt::format("input is {}, graph is {}",
                                 DTypeName(input.dtype()),
                                 DTypeName(graph.dtype())));
  }
  const auto& nodes = graph.nodes();
  std::vector<std::optional<Tensor>> values(nodes.size());
  std::optional<Tensor> in_value(std::move(input));
  int64_t live = static_cast<int64_t>(in_value->ByteSize());
  std::vector<const Tensor*> args;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const OperatorNode& node = nodes[i];
    const Graph::Resolved& r = graph.resolved(i);
    args.clear();
    for (int j : r.inputs) args.push_back(j < 0 ? &*in_value : &*values[j]);
    try {
      values[i] = RunNode(node, r, args, kernels);
    } catch (const BenchError& e) {
      throw BenchError(e.kind(), node.id,
                       fmt::format("node '{}' ({}): {}", node.id,
                                   OpKindName(node.kind), e.what()));
    }
    live += static_cast<int64_t>(values[i]->ByteSize());
    if (observer) observer(NodeEvent{i, &node, &*values[i], live});
    const int step = static_cast<int>(i);
    if (in_value && graph.input_last_use() == step) {
      live -= static_cast<int64_t>(in_value->ByteSize());
      in_value.reset();
    }
    for (int j : r.inputs) {
      if (j >= 0 && values[j] && graph.resolved(j).last_use == step) {
        live -= static_cast<int64_t>(values[j]->ByteSize());
        values[j].reset();
      }
    }
  }
  return std::move(*values[graph.output_index()]);
}

}  // namespace infer_bench
