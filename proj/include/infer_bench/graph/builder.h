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

#ifndef INFER_BENCH_GRAPH_BUILDER_H_
#define INFER_BENCH_GRAPH_BUILDER_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "infer_bench/common/splitmix.h"
#include "infer_bench/graph/graph.h"

namespace infer_bench {

// Incremental construction of float GraphSpecs with shape tracking. Weights
// are drawn from one SplitMix64 stream in node order, filter then bias, each
// value uniform in [-0.1, 0.1]. Node ids are "<scope>/<kind>_<n>" unless given
// explicitly.
class GraphBuilder {
 public:
  GraphBuilder(std::string name, Shape input_shape, uint64_t seed,
               bool with_weights = true);

  const std::string& input() const { return spec_.input_id; }
  const Shape& shape(const std::string& id) const;

  // Prefix for generated ids.
  void SetScope(std::string scope) { scope_ = std::move(scope); }

  std::string Conv(const std::string& in, int kh, int kw, int cout,
                   int stride = 1, Padding padding = Padding::kSame,
                   Activation act = Activation::kRelu);
  std::string Depthwise(const std::string& in, int k, int stride = 1,
                        Padding padding = Padding::kSame,
                        Activation act = Activation::kRelu);
  std::string FullyConnected(const std::string& in, int cout,
                             Activation act = Activation::kNone);
  std::string Pool(const std::string& in, PoolKind kind, int window,
                   int stride, Padding padding = Padding::kValid);
  // Average over the full spatial extent.
  std::string GlobalAvgPool(const std::string& in);
  std::string Resize(const std::string& in, int out_h, int out_w);
  std::string Add(const std::string& a, const std::string& b);
  std::string Relu(const std::string& in);
  std::string Concat(const std::vector<std::string>& ins);
  std::string Softmax(const std::string& in);

  // Moves the spec out; the builder must not be used afterwards.
  GraphSpec Finish(const std::string& output);

 private:
  std::string Emit(OperatorNode node);
  std::string NextId(OpKind kind);
  void AddWeights(OperatorNode& node, const Shape& filter, int bias_len);

  GraphSpec spec_;
  SplitMix64 rng_;
  bool with_weights_;
  std::string scope_;
  int counter_ = 0;
  std::unordered_map<std::string, Shape> shapes_;
};

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_BUILDER_H_
