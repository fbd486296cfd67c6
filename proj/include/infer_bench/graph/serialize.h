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

#ifndef INFER_BENCH_GRAPH_SERIALIZE_H_
#define INFER_BENCH_GRAPH_SERIALIZE_H_

#include <iosfwd>
#include <string>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

// Binary weight blob, little-endian:
//   "IBW1" u32 n_tensors { name, u8 dtype, i32 n h w c, [f32 scale,
//   i32 zero_point if int8], payload } u32 n_biases { name, u8 kind
//   (0 float, 1 int32), u32 length, payload }
// where name is u32 length + bytes. Payload is 4 bytes per float/int32 and
// 1 byte per int8 element.
void SerializeWeights(const WeightStore& weights, std::ostream& out);
WeightStore DeserializeWeights(std::istream& in);

std::string SerializeWeightsToString(const WeightStore& weights);

}  // namespace infer_bench

#endif  // INFER_BENCH_GRAPH_SERIALIZE_H_
