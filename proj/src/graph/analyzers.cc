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

#include "infer_bench/graph/analyzers.h"

#include <algorithm>

namespace infer_bench {

namespace {

const Shape& InputShapeOf(const Graph& g, size_t i, size_t k = 0) {
  const int j = g.resolved(i).inputs[k];
  return j < 0 ? g.input_shape() : g.output_shape(j);
}

int64_t NodeParams(const Graph& g, size_t i) {
  const OperatorNode& node = g.nodes()[i];
  const Graph::Resolved& r = g.resolved(i);
  if (r.filter != nullptr) {
    return r.filter->elements() + static_cast<int64_t>(BiasLength(*r.bias));
  }
  if (node.weight_refs.empty()) return 0;
  const Shape& in = InputShapeOf(g, i);
  return ExpectedFilterShape(node, in).elements() +
         ExpectedBiasLength(node, in);
}

int64_t NodeMacs(const Graph& g, size_t i) {
  const OperatorNode& node = g.nodes()[i];
  const Shape& out = g.output_shape(i);
  const int64_t pixels = static_cast<int64_t>(out.n) * out.h * out.w;
  switch (node.kind) {
    case OpKind::kConv2D:
      return pixels * node.attrs.kernel_h * node.attrs.kernel_w *
             InputShapeOf(g, i).c * out.c;
    case OpKind::kDepthwiseConv2D:
      return pixels * node.attrs.kernel_h * node.attrs.kernel_w * out.c;
    case OpKind::kFullyConnected: {
      const Shape& in = InputShapeOf(g, i);
      return static_cast<int64_t>(in.n) * in.h * in.w * in.c * out.c;
    }
    default:
      return 0;
  }
}

}  // namespace

int64_t ActivationElementBytes(DType dtype) {
  return dtype == DType::kInt8Q ? 1 : 4;
}

int64_t CountParams(const Graph& graph) {
  int64_t total = 0;
  for (size_t i = 0; i < graph.nodes().size(); ++i) {
    total += NodeParams(graph, i);
  }
  return total;
}

int64_t CountMacs(const Graph& graph) {
  int64_t total = 0;
  for (size_t i = 0; i < graph.nodes().size(); ++i) {
    total += NodeMacs(graph, i);
  }
  return total;
}

int64_t CountOtherOps(const Graph& graph) {
  int64_t total = 0;
  for (size_t i = 0; i < graph.nodes().size(); ++i) {
    const OperatorNode& node = graph.nodes()[i];
    const int64_t elems = graph.output_shape(i).elements();
    switch (node.kind) {
      case OpKind::kPool:
        total += elems * node.attrs.window_h * node.attrs.window_w;
        break;
      case OpKind::kResizeBilinear:
        total += elems * 4;
        break;
      case OpKind::kAdd:
      case OpKind::kRelu:
      case OpKind::kConcat:
        total += elems;
        break;
      case OpKind::kSoftmax:
        total += elems * 3;
        break;
      default:
        break;
    }
  }
  return total;
}

int64_t PeakActivationBytes(const Graph& graph) {
  const int64_t width = ActivationElementBytes(graph.dtype());
  const size_t n = graph.nodes().size();
  std::vector<bool> alive(n, false);
  bool input_alive = true;
  int64_t live = graph.input_shape().elements() * width;
  int64_t peak = live;
  for (size_t i = 0; i < n; ++i) {
    live += graph.output_shape(i).elements() * width;
    alive[i] = true;
    peak = std::max(peak, live);
    const int step = static_cast<int>(i);
    if (input_alive && graph.input_last_use() == step) {
      live -= graph.input_shape().elements() * width;
      input_alive = false;
    }
    for (int j : graph.resolved(i).inputs) {
      if (j >= 0 && alive[j] && graph.resolved(j).last_use == step) {
        live -= graph.output_shape(j).elements() * width;
        alive[j] = false;
      }
    }
  }
  return peak;
}

std::vector<LayerRow> LayerTable(const Graph& graph) {
  std::vector<LayerRow> rows;
  for (size_t i = 0; i < graph.nodes().size(); ++i) {
    const OperatorNode& node = graph.nodes()[i];
    rows.push_back(LayerRow{node.id, node.kind, graph.output_shape(i),
                            NodeParams(graph, i), NodeMacs(graph, i)});
  }
  return rows;
}

}  // namespace infer_bench
