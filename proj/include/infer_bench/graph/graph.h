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

#ifndef INFER_BENCH_GRAPH_GRAPH_H_
#define INFER_BENCH_GRAPH_GRAPH_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infer_bench/kernels/backend_kernels.h"

namespace infer_bench {

// Op-specific attributes. Only the fields relevant to a node's kind are
// read; Validate rejects values that make no sense for that kind.
struct NodeAttrs {
  // conv2d, depthwise_conv2d: kernel extents. conv2d, fully_connected:
  // out_channels.
  int kernel_h = 0;
  int kernel_w = 0;
  int out_channels = 0;
  int stride_h = 1;
  int stride_w = 1;
  Padding padding = Padding::kSame;
  // Fused activation for conv2d, depthwise_conv2d and fully_connected.
  Activation activation = Activation::kNone;
  // pool.
  PoolKind pool_kind = PoolKind::kMax;
  int window_h = 0;
  int window_w = 0;
  // resize_bilinear target.
  int out_h = 0;
  int out_w = 0;
  // Output quantization for int8 graphs (conv, depthwise, fc, add, concat,
  // softmax). Pool, relu and resize keep their input's parameters.
  std::optional<QuantParams> out_qp;
};

struct OperatorNode {
  std::string id;
  OpKind kind = OpKind::kRelu;
  NodeAttrs attrs;
  // Earlier node ids or the graph input id.
  std::vector<std::string> inputs;
  // conv2d, depthwise_conv2d, fully_connected: {filter, bias}.
  std::vector<std::string> weight_refs;
};

class WeightStore {
 public:
  void AddTensor(const std::string& name, Tensor tensor);
  void AddBias(const std::string& name, Bias bias);

  const Tensor* FindTensor(const std::string& name) const;
  const Bias* FindBias(const std::string& name) const;

  const std::map<std::string, Tensor>& tensors() const { return tensors_; }
  const std::map<std::string, Bias>& biases() const { return biases_; }
  bool empty() const { return tensors_.empty() && biases_.empty(); }

  // Element count over all tensors and bias vectors.
  int64_t ParameterCount() const;
  // In-memory payload bytes: 4 per float or int32, 1 per int8.
  int64_t PayloadBytes() const;

 private:
  std::map<std::string, Tensor> tensors_;
  std::map<std::string, Bias> biases_;
};

struct GraphSpec {
  std::string name;
  std::string input_id = "input";
  Shape input_shape;
  // dtype_profile: every activation and weight tensor has this dtype.
  DType dtype = DType::kFloat32;
  // Required for int8 graphs.
  std::optional<QuantParams> input_qp;
  std::vector<OperatorNode> nodes;
  std::string output_id;
  WeightStore weights;
};

// A validated, immutable graph. Copies share the underlying spec.
class Graph {
 public:
  struct Resolved {
    // Index of each input node, or -1 for the graph input.
    std::vector<int> inputs;
    Shape output_shape;
    // Index of the last node reading this output; nodes().size() for the
    // graph output (never released).
    int last_use = 0;
    const Tensor* filter = nullptr;
    const Bias* bias = nullptr;
  };

  const GraphSpec& spec() const { return *spec_; }
  const std::string& name() const { return spec_->name; }
  DType dtype() const { return spec_->dtype; }
  const Shape& input_shape() const { return spec_->input_shape; }
  const std::vector<OperatorNode>& nodes() const { return spec_->nodes; }
  const Resolved& resolved(size_t i) const { return resolved_[i]; }
  const Shape& output_shape(size_t i) const {
    return resolved_[i].output_shape;
  }
  int output_index() const { return output_index_; }
  // Last node reading the graph input.
  int input_last_use() const { return input_last_use_; }
  // False for structure-only graphs, which support analysis but not
  // execution.
  bool has_weights() const { return has_weights_; }

 private:
  friend Graph ValidateImpl(GraphSpec spec, bool require_weights);

  std::shared_ptr<const GraphSpec> spec_;
  std::vector<Resolved> resolved_;
  int output_index_ = -1;
  int input_last_use_ = -1;
  bool has_weights_ = false;
};

// Full validation: structure, attributes, shapes and weights. Errors are
// BenchErrors whose subject names the offending node or weight.
Graph Validate(GraphSpec spec);

// Structure, attributes and shapes only; weights are not consulted.
Graph ValidateStructure(GraphSpec spec);

// Filter shape a node expects given its input shape, and its bias length.
Shape ExpectedFilterShape(const OperatorNode& node, const Shape& input);
int ExpectedBiasLength(const OperatorNode& node, const Shape& input);

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_GRAPH_H_
