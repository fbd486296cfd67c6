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

#include "infer_bench/graph/builder.h"

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

namespace {

constexpr double kWeightLo = -0.1;
constexpr double kWeightHi = 0.1;

}  // namespace

GraphBuilder::GraphBuilder(std::string name, Shape input_shape, uint64_t seed,
                           bool with_weights)
    : rng_(seed), with_weights_(with_weights) {
  ValidateShape(input_shape, "input");
  spec_.name = std::move(name);
  spec_.input_shape = input_shape;
  shapes_[spec_.input_id] = input_shape;
}

const Shape& GraphBuilder::shape(const std::string& id) const {
  auto it = shapes_.find(id);
  if (it == shapes_.end()) {
    throw BenchError(ErrorKind::kDanglingReference, id,
                     fmt::format("builder has no node '{}'", id));
  }
  return it->second;
}

std::string GraphBuilder::NextId(OpKind kind) {
  const std::string base = fmt::format("{}_{}", OpKindName(kind), counter_++);
  return scope_.empty() ? base : scope_ + "/" + base;
}

void GraphBuilder::AddWeights(OperatorNode& node, const Shape& filter,
                              int bias_len) {
  node.weight_refs = {node.id + "/weights", node.id + "/bias"};
  if (!with_weights_) return;
  std::vector<float> w(static_cast<size_t>(filter.elements()));
  for (float& v : w) v = rng_.NextUniform(kWeightLo, kWeightHi);
  std::vector<float> b(static_cast<size_t>(bias_len));
  for (float& v : b) v = rng_.NextUniform(kWeightLo, kWeightHi);
  spec_.weights.AddTensor(node.weight_refs[0],
                          Tensor::FromFloats(filter, std::move(w)));
  spec_.weights.AddBias(node.weight_refs[1], std::move(b));
}

std::string GraphBuilder::Emit(OperatorNode node) {
  std::vector<Shape> in_shapes;
  for (const std::string& in : node.inputs) in_shapes.push_back(shape(in));
  Shape out;
  const NodeAttrs& a = node.attrs;
  const ConvParams cp{a.stride_h, a.stride_w, a.padding, a.activation};
  switch (node.kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2D:
    case OpKind::kFullyConnected: {
      const Shape filter = ExpectedFilterShape(node, in_shapes[0]);
      out = node.kind == OpKind::kConv2D
                ? Conv2DOutputShape(in_shapes[0], filter, cp)
            : node.kind == OpKind::kDepthwiseConv2D
                ? DepthwiseOutputShape(in_shapes[0], filter, cp)
                : FullyConnectedOutputShape(in_shapes[0], filter);
      AddWeights(node, filter, ExpectedBiasLength(node, in_shapes[0]));
      break;
    }
    case OpKind::kPool:
      out = PoolOutputShape(in_shapes[0],
                            PoolParams{a.pool_kind, a.window_h, a.window_w,
                                       a.stride_h, a.stride_w, a.padding});
      break;
    case OpKind::kResizeBilinear:
      out = ResizeOutputShape(in_shapes[0], a.out_h, a.out_w);
      break;
    case OpKind::kAdd:
      out = AddOutputShape(in_shapes[0], in_shapes[1]);
      break;
    case OpKind::kConcat:
      out = ConcatOutputShape(in_shapes);
      break;
    case OpKind::kRelu:
    case OpKind::kSoftmax:
      out = in_shapes[0];
      break;
  }
  shapes_[node.id] = out;
  spec_.nodes.push_back(std::move(node));
  return spec_.nodes.back().id;
}

std::string GraphBuilder::Conv(const std::string& in, int kh, int kw, int cout,
                               int stride, Padding padding, Activation act) {
  OperatorNode n;
  n.id = NextId(OpKind::kConv2D);
  n.kind = OpKind::kConv2D;
  n.inputs = {in};
  n.attrs.kernel_h = kh;
  n.attrs.kernel_w = kw;
  n.attrs.out_channels = cout;
  n.attrs.stride_h = n.attrs.stride_w = stride;
  n.attrs.padding = padding;
  n.attrs.activation = act;
  return Emit(std::move(n));
}

std::string GraphBuilder::Depthwise(const std::string& in, int k, int stride,
                                    Padding padding, Activation act) {
  OperatorNode n;
  n.id = NextId(OpKind::kDepthwiseConv2D);
  n.kind = OpKind::kDepthwiseConv2D;
  n.inputs = {in};
  n.attrs.kernel_h = n.attrs.kernel_w = k;
  n.attrs.stride_h = n.attrs.stride_w = stride;
  n.attrs.padding = padding;
  n.attrs.activation = act;
  return Emit(std::move(n));
}

std::string GraphBuilder::FullyConnected(const std::string& in, int cout,
                                         Activation act) {
  OperatorNode n;
  n.id = NextId(OpKind::kFullyConnected);
  n.kind = OpKind::kFullyConnected;
  n.inputs = {in};
  n.attrs.out_channels = cout;
  n.attrs.activation = act;
  return Emit(std::move(n));
}

std::string GraphBuilder::Pool(const std::string& in, PoolKind kind,
                               int window, int stride, Padding padding) {
  OperatorNode n;
  n.id = NextId(OpKind::kPool);
  n.kind = OpKind::kPool;
  n.inputs = {in};
  n.attrs.pool_kind = kind;
  n.attrs.window_h = n.attrs.window_w = window;
  n.attrs.stride_h = n.attrs.stride_w = stride;
  n.attrs.padding = padding;
  return Emit(std::move(n));
}

std::string GraphBuilder::GlobalAvgPool(const std::string& in) {
  const Shape s = shape(in);
  OperatorNode n;
  n.id = NextId(OpKind::kPool);
  n.kind = OpKind::kPool;
  n.inputs = {in};
  n.attrs.pool_kind = PoolKind::kAvg;
  n.attrs.window_h = s.h;
  n.attrs.window_w = s.w;
  n.attrs.stride_h = n.attrs.stride_w = 1;
  n.attrs.padding = Padding::kValid;
  return Emit(std::move(n));
}

std::string GraphBuilder::Resize(const std::string& in, int out_h, int out_w) {
  OperatorNode n;
  n.id = NextId(OpKind::kResizeBilinear);
  n.kind = OpKind::kResizeBilinear;
  n.inputs = {in};
  n.attrs.out_h = out_h;
  n.attrs.out_w = out_w;
  return Emit(std::move(n));
}

std::string GraphBuilder::Add(const std::string& a, const std::string& b) {
  OperatorNode n;
  n.id = NextId(OpKind::kAdd);
  n.kind = OpKind::kAdd;
  n.inputs = {a, b};
  return Emit(std::move(n));
}

std::string GraphBuilder::Relu(const std::string& in) {
  OperatorNode n;
  n.id = NextId(OpKind::kRelu);
  n.kind = OpKind::kRelu;
  n.inputs = {in};
  return Emit(std::move(n));
}

std::string GraphBuilder::Concat(const std::vector<std::string>& ins) {
  OperatorNode n;
  n.id = NextId(OpKind::kConcat);
  n.kind = OpKind::kConcat;
  n.inputs = ins;
  return Emit(std::move(n));
}

std::string GraphBuilder::Softmax(const std::string& in) {
  OperatorNode n;
  n.id = NextId(OpKind::kSoftmax);
  n.kind = OpKind::kSoftmax;
  n.inputs = {in};
  return Emit(std::move(n));
}

GraphSpec GraphBuilder::Finish(const std::string& output) {
  shape(output);
  spec_.output_id = output;
  return std::move(spec_);
}

}  // namespace infer_bench
