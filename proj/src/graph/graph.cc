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

#include "infer_bench/graph/graph.h"

#include <unordered_map>

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

void WeightStore::AddTensor(const std::string& name, Tensor tensor) {
  if (!tensors_.emplace(name, std::move(tensor)).second) {
    throw BenchError(ErrorKind::kInvalidArgument, name,
                     fmt::format("duplicate weight tensor '{}'", name));
  }
}

void WeightStore::AddBias(const std::string& name, Bias bias) {
  if (!biases_.emplace(name, std::move(bias)).second) {
    throw BenchError(ErrorKind::kInvalidArgument, name,
                     fmt::format("duplicate bias '{}'", name));
  }
}

const Tensor* WeightStore::FindTensor(const std::string& name) const {
  auto it = tensors_.find(name);
  return it == tensors_.end() ? nullptr : &it->second;
}

const Bias* WeightStore::FindBias(const std::string& name) const {
  auto it = biases_.find(name);
  return it == biases_.end() ? nullptr : &it->second;
}

int64_t WeightStore::ParameterCount() const {
  int64_t total = 0;
  for (const auto& [name, t] : tensors_) total += t.elements();
  for (const auto& [name, b] : biases_) {
    total += static_cast<int64_t>(BiasLength(b));
  }
  return total;
}

int64_t WeightStore::PayloadBytes() const {
  int64_t total = 0;
  for (const auto& [name, t] : tensors_) {
    total += static_cast<int64_t>(t.ByteSize());
  }
  for (const auto& [name, b] : biases_) {
    total += static_cast<int64_t>(BiasLength(b)) * 4;
  }
  return total;
}

namespace {

bool HasWeights(OpKind kind) {
  return kind == OpKind::kConv2D || kind == OpKind::kDepthwiseConv2D ||
         kind == OpKind::kFullyConnected;
}

// Ops whose int8 output needs its own quantization parameters.
bool NeedsOutQParams(OpKind kind) {
  switch (kind) {
    case OpKind::kConv2D:
    case OpKind::kDepthwiseConv2D:
    case OpKind::kFullyConnected:
    case OpKind::kAdd:
    case OpKind::kConcat:
    case OpKind::kSoftmax:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void BadAttr(const OperatorNode& node, const std::string& msg) {
  throw BenchError(ErrorKind::kInvalidArgument, node.id,
                   fmt::format("node '{}' ({}): {}", node.id,
                               OpKindName(node.kind), msg));
}

void CheckAttrs(const OperatorNode& node, DType dtype) {
  const NodeAttrs& a = node.attrs;
  const size_t n_in = node.inputs.size();
  const bool binary = node.kind == OpKind::kAdd;
  const bool variadic = node.kind == OpKind::kConcat;
  if (binary && n_in != 2) BadAttr(node, "expects exactly 2 inputs");
  if (variadic && n_in < 2) BadAttr(node, "expects at least 2 inputs");
  if (!binary && !variadic && n_in != 1) BadAttr(node, "expects 1 input");
  if (a.stride_h < 1 || a.stride_w < 1) BadAttr(node, "stride must be >= 1");
  switch (node.kind) {
    case OpKind::kConv2D:
      if (a.out_channels < 1) BadAttr(node, "out_channels must be >= 1");
      [[fallthrough]];
    case OpKind::kDepthwiseConv2D:
      if (a.kernel_h < 1 || a.kernel_w < 1) {
        BadAttr(node, "kernel extents must be >= 1");
      }
      break;
    case OpKind::kFullyConnected:
      if (a.out_channels < 1) BadAttr(node, "out_channels must be >= 1");
      break;
    case OpKind::kPool:
      if (a.window_h < 1 || a.window_w < 1) {
        BadAttr(node, "pool window must be >= 1");
      }
      break;
    case OpKind::kResizeBilinear:
      if (a.out_h < 1 || a.out_w < 1) {
        BadAttr(node, "resize target must be >= 1");
      }
      break;
    default:
      break;
  }
  if (!HasWeights(node.kind) && a.activation != Activation::kNone) {
    BadAttr(node, "fused activation is only valid on conv, depthwise and fc");
  }
  if (HasWeights(node.kind) && node.weight_refs.size() != 2) {
    BadAttr(node, "expects weight_refs {filter, bias}");
  }
  if (!HasWeights(node.kind) && !node.weight_refs.empty()) {
    BadAttr(node, "takes no weights");
  }
  if (dtype == DType::kFloat32 && a.out_qp) {
    BadAttr(node, "out_qp is only valid in int8 graphs");
  }
  if (dtype == DType::kInt8Q) {
    if (NeedsOutQParams(node.kind) && !a.out_qp) {
      BadAttr(node, "int8 graphs need out_qp on this op");
    }
    if (!NeedsOutQParams(node.kind) && a.out_qp) {
      BadAttr(node, "op keeps its input quantization; out_qp not allowed");
    }
    if (a.out_qp) ValidateQuantParams(*a.out_qp);
  }
}

ConvParams ToConvParams(const NodeAttrs& a) {
  return ConvParams{a.stride_h, a.stride_w, a.padding, a.activation};
}

Shape OutputShape(const OperatorNode& node,
                  const std::vector<const Shape*>& in) {
  const NodeAttrs& a = node.attrs;
  switch (node.kind) {
    case OpKind::kConv2D:
      return Conv2DOutputShape(*in[0], ExpectedFilterShape(node, *in[0]),
                               ToConvParams(a));
    case OpKind::kDepthwiseConv2D:
      return DepthwiseOutputShape(*in[0], ExpectedFilterShape(node, *in[0]),
                                  ToConvParams(a));
    case OpKind::kFullyConnected:
      return FullyConnectedOutputShape(*in[0],
                                       ExpectedFilterShape(node, *in[0]));
    case OpKind::kPool:
      return PoolOutputShape(*in[0], PoolParams{a.pool_kind, a.window_h,
                                                a.window_w, a.stride_h,
                                                a.stride_w, a.padding});
    case OpKind::kResizeBilinear:
      return ResizeOutputShape(*in[0], a.out_h, a.out_w);
    case OpKind::kAdd:
      return AddOutputShape(*in[0], *in[1]);
    case OpKind::kConcat: {
      std::vector<Shape> shapes;
      for (const Shape* s : in) shapes.push_back(*s);
      return ConcatOutputShape(shapes);
    }
    case OpKind::kRelu:
    case OpKind::kSoftmax:
      return *in[0];
  }
  return *in[0];
}

void CheckWeights(const OperatorNode& node, const Shape& input,
                  const WeightStore& store, DType dtype, Graph::Resolved& r) {
  const std::string& fname = node.weight_refs[0];
  const std::string& bname = node.weight_refs[1];
  const Tensor* filter = store.FindTensor(fname);
  if (filter == nullptr) {
    throw BenchError(ErrorKind::kMissingWeight, fname,
                     fmt::format("node '{}' references missing weight '{}'",
                                 node.id, fname));
  }
  const Bias* bias = store.FindBias(bname);
  if (bias == nullptr) {
    throw BenchError(ErrorKind::kMissingWeight, bname,
                     fmt::format("node '{}' references missing bias '{}'",
                                 node.id, bname));
  }
  const Shape want = ExpectedFilterShape(node, input);
  if (filter->shape() != want) {
    throw BenchError(ErrorKind::kShapeMismatch, fname,
                     fmt::format("weight '{}' has shape {}, node '{}' needs {}",
                                 fname, filter->shape().ToString(), node.id,
                                 want.ToString()));
  }
  const int want_bias = ExpectedBiasLength(node, input);
  if (BiasLength(*bias) != static_cast<size_t>(want_bias)) {
    throw BenchError(ErrorKind::kShapeMismatch, bname,
                     fmt::format("bias '{}' has {} entries, node '{}' needs {}",
                                 bname, BiasLength(*bias), node.id, want_bias));
  }
  if (filter->dtype() != dtype) {
    throw BenchError(ErrorKind::kDTypeMismatch, fname,
                     fmt::format("weight '{}' is {} in a {} graph", fname,
                                 DTypeName(filter->dtype()), DTypeName(dtype)));
  }
  const bool int_bias = std::holds_alternative<std::vector<int32_t>>(*bias);
  if (int_bias != (dtype == DType::kInt8Q)) {
    throw BenchError(ErrorKind::kDTypeMismatch, bname,
                     fmt::format("bias '{}' is {} in a {} graph", bname,
                                 int_bias ? "int32" : "float32",
                                 DTypeName(dtype)));
  }
  r.filter = filter;
  r.bias = bias;
}

}  // namespace

Shape ExpectedFilterShape(const OperatorNode& node, const Shape& input) {
  const NodeAttrs& a = node.attrs;
  switch (node.kind) {
    case OpKind::kConv2D:
      return Shape{a.kernel_h, a.kernel_w, input.c, a.out_channels};
    case OpKind::kDepthwiseConv2D:
      return Shape{a.kernel_h, a.kernel_w, input.c, 1};
    case OpKind::kFullyConnected:
      return Shape{1, 1, input.h * input.w * input.c, a.out_channels};
    default:
      return Shape{};
  }
}

int ExpectedBiasLength(const OperatorNode& node, const Shape& input) {
  return node.kind == OpKind::kDepthwiseConv2D ? input.c
                                               : node.attrs.out_channels;
}

Graph ValidateImpl(GraphSpec spec, bool require_weights) {
  ValidateShape(spec.input_shape, "input");
  if (spec.dtype == DType::kInt8Q) {
    if (!spec.input_qp) {
      throw BenchError(ErrorKind::kDTypeMismatch, spec.input_id,
                       "int8 graph needs input quantization parameters");
    }
    ValidateQuantParams(*spec.input_qp);
  } else if (spec.input_qp) {
    throw BenchError(ErrorKind::kDTypeMismatch, spec.input_id,
                     "float graph must not carry input quantization");
  }
  if (spec.nodes.empty()) {
    throw BenchError(ErrorKind::kInvalidArgument, spec.name,
                     "graph has no nodes");
  }
  const size_t n = spec.nodes.size();
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < n; ++i) {
    const std::string& id = spec.nodes[i].id;
    if (id.empty() || id == spec.input_id || !index.emplace(id, i).second) {
      throw BenchError(ErrorKind::kInvalidArgument, id,
                       fmt::format("node id '{}' is empty or not unique", id));
    }
  }

  Graph g;
  g.resolved_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const OperatorNode& node = spec.nodes[i];
    Graph::Resolved& r = g.resolved_[i];
    for (const std::string& in : node.inputs) {
      if (in == spec.input_id) {
        r.inputs.push_back(-1);
        continue;
      }
      auto it = index.find(in);
      if (it == index.end()) {
        throw BenchError(ErrorKind::kDanglingReference, node.id,
                         fmt::format("node '{}' reads unknown input '{}'",
                                     node.id, in));
      }
      if (it->second >= static_cast<int>(i)) {
        throw BenchError(ErrorKind::kCycle, node.id,
                         fmt::format("node '{}' reads '{}', which is not an "
                                     "earlier node",
                                     node.id, in));
      }
      r.inputs.push_back(it->second);
    }
    CheckAttrs(node, spec.dtype);
    std::vector<const Shape*> in_shapes;
    for (int j : r.inputs) {
      in_shapes.push_back(j < 0 ? &spec.input_shape
                                : &g.resolved_[j].output_shape);
    }
    try {
      r.output_shape = OutputShape(node, in_shapes);
    } catch (const BenchError& e) {
      throw BenchError(e.kind(), node.id,
                       fmt::format("node '{}' ({}): {}", node.id,
                                   OpKindName(node.kind), e.what()));
    }
  }

  auto out_it = index.find(spec.output_id);
  if (out_it == index.end()) {
    throw BenchError(ErrorKind::kDanglingReference, spec.output_id,
                     fmt::format("output '{}' is not a node", spec.output_id));
  }
  g.output_index_ = out_it->second;

  // Every node must feed the output.
  std::vector<bool> live(n, false);
  live[g.output_index_] = true;
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    if (!live[i]) continue;
    for (int j : g.resolved_[i].inputs) {
      if (j >= 0) live[j] = true;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (!live[i]) {
      throw BenchError(ErrorKind::kUnusedNode, spec.nodes[i].id,
                       fmt::format("node '{}' does not contribute to output "
                                   "'{}'",
                                   spec.nodes[i].id, spec.output_id));
    }
  }

  for (size_t i = 0; i < n; ++i) {
    g.resolved_[i].last_use = static_cast<int>(i);
  }
  g.resolved_[g.output_index_].last_use = static_cast<int>(n);
  for (size_t i = 0; i < n; ++i) {
    for (int j : g.resolved_[i].inputs) {
      if (j < 0) {
        g.input_last_use_ = static_cast<int>(i);
      } else if (g.resolved_[j].last_use != static_cast<int>(n)) {
        g.resolved_[j].last_use = static_cast<int>(i);
      }
    }
  }

  if (require_weights) {
    for (size_t i = 0; i < n; ++i) {
      const OperatorNode& node = spec.nodes[i];
      if (!HasWeights(node.kind)) continue;
      const int j = g.resolved_[i].inputs[0];
      const Shape& in = j < 0 ? spec.input_shape : g.resolved_[j].output_shape;
      CheckWeights(node, in, spec.weights, spec.dtype, g.resolved_[i]);
    }
    g.has_weights_ = true;
  }
  // Filter and bias pointers refer into the map nodes, which stay put when
  // the store is moved into shared ownership.
  g.spec_ = std::make_shared<const GraphSpec>(std::move(spec));
  return g;
}

Graph Validate(GraphSpec spec) { return ValidateImpl(std::move(spec), true); }

Graph ValidateStructure(GraphSpec spec) {
  return ValidateImpl(std::move(spec), false);
}

}  // namespace infer_bench
