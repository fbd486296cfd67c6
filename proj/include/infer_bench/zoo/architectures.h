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

#ifndef INFER_BENCH_ZOO_ARCHITECTURES_H_
#define INFER_BENCH_ZOO_ARCHITECTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

// Builder ids.
inline constexpr char kMobileNetV1[] = "mobilenet_v1";
inline constexpr char kInceptionV3[] = "inception_v3";
inline constexpr char kInceptionResNetV1[] = "inception_resnet_v1";
inline constexpr char kSrcnn[] = "srcnn";
inline constexpr char kVdsr[] = "vdsr";
inline constexpr char kSrgan[] = "srgan";
inline constexpr char kIcnet[] = "icnet";
inline constexpr char kDped[] = "dped";

std::vector<std::string> ArchitectureIds();

// Float graph for `arch` on a 1 x h x w x 3 input. Weights are drawn from
// `seed` unless `with_weights` is false (structure only, for analysis).
GraphSpec BuildArchitecture(const std::string& arch, int h, int w,
                            uint64_t seed, bool with_weights = true);

}  // namespace infer_bench

#endif  // INFER_BENCH_ZOO_ARCHITECTURES_H_
