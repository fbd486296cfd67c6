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

#include "infer_bench/graph/quantize.h"

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/graph/execute.h"
#include "infer_bench/kernels/quantization.h"

namespace infer_bench {

namespace {

std::pair<float, float> Range(std::span<const float> v) {
  float lo = std::numeric_limits<float>::infinity();
  float hi = -lo;
  for (float x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

}  // namespace

GraphSpec QuantizeGraph(const Graph& float_graph,
                        const Tensor& calibration_input,
                        const BackendKernels& kernels,
                        const QuantParams& input_qp) {
  if (float_graph.dtype() != DType::kFloat32 || !float_graph.has_weights()) {
    throw BenchError(ErrorKind::kDTypeMismatch, float_graph.name(),
                     "quantization needs a float graph with weights");
  }
  ValidateQuantParams(input_qp);
  const auto& nodes = float_graph.nodes();
  std::vector<std::pair<float, float>> ranges(nodes.size());
  Execute(float_graph, calibration_input, kernels, [&](const NodeEvent& e) {
    ranges[e.index] = Range(e.output->floats());
  });

  const GraphSpec& src = float_graph.spec();
  GraphSpec out;
  out.name = src.name;
  out.input_id = src.input_id;
  out.input_shape = src.input_shape;
  out.dtype = DType::kInt8Q;
  out.input_qp = input_qp;
  out.output_id = src.output_id;
  std::vector<QuantParams> node_qp(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    OperatorNode node = nodes[i];
    const Graph::Resolved& r = float_graph.resolved(i);
    const int first = r.inputs[0];
    const QuantParams in_qp = first < 0 ? input_qp : node_qp[first];
    switch (node.kind) {
      case OpKind::kConv2D:
      case OpKind::kDepthwiseConv2D:
      case OpKind::kFullyConnected: {
        const auto [wlo, whi] = Range(r.filter->floats());
        const QuantParams wqp = ChooseQuantParams(wlo, whi);
        out.weights.AddTensor(node.weight_refs[0], Quantize(*r.filter, wqp));
        out.weights.AddBias(
            node.weight_refs[1],
            QuantizeBias(std::get<std::vector<float>>(*r.bias), in_qp.scale,
                         wqp.scale));
        node.attrs.out_qp = ChooseQuantParams(ranges[i].first,
                                              ranges[i].second);
        break;
      }
      case OpKind::kAdd:
      case OpKind::kConcat:
        node.attrs.out_qp = ChooseQuantParams(ranges[i].first,
                                              ranges[i].second);
        break;
      case OpKind::kSoftmax:
        node.attrs.out_qp = kSoftmaxOutputQParams;
        break;
      case OpKind::kPool:
      case OpKind::kRelu:
      case OpKind::kResizeBilinear:
        node.attrs.out_qp.reset();
        break;
    }
    node_qp[i] = node.attrs.out_qp.value_or(in_qp);
    out.nodes.push_back(std::move(node));
  }
  return out;
}

}  // namespace infer_bench
