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

#ifndef INFER_BENCH_KERNELS_OP_PARAMS_H_
#define INFER_BENCH_KERNELS_OP_PARAMS_H_

#include <span>
#include <string>

#include "infer_bench/kernels/tensor.h"

namespace infer_bench {

enum class Padding { kSame, kValid };
enum class Activation { kNone, kRelu };
enum class PoolKind { kMax, kAvg };

std::string PaddingName(Padding p);
std::string ActivationName(Activation a);
std::string PoolKindName(PoolKind k);

struct ConvParams {
  int stride_h = 1;
  int stride_w = 1;
  Padding padding = Padding::kSame;
  Activation activation = Activation::kNone;
};

struct PoolParams {
  PoolKind kind = PoolKind::kMax;
  int window_h = 2;
  int window_w = 2;
  int stride_h = 2;
  int stride_w = 2;
  Padding padding = Padding::kValid;
};

// TF-style padding: same -> ceil(in / stride), valid -> floor((in - k) / s) + 1.
// Same padding puts the odd pixel at the bottom/right.
struct Window1D {
  int out = 0;
  int pad_before = 0;
};

// Throws kShapeMismatch naming `dim` when the window does not fit.
Window1D ComputeWindow(int in, int kernel, int stride, Padding padding,
                       const char* dim);

// Shape functions. They are the single source of output extents for kernels,
// graph validation and the analyzers.
Shape Conv2DOutputShape(const Shape& input, const Shape& filter,
                        const ConvParams& p);
Shape DepthwiseOutputShape(const Shape& input, const Shape& filter,
                           const ConvParams& p);
Shape FullyConnectedOutputShape(const Shape& input, const Shape& filter);
Shape PoolOutputShape(const Shape& input, const PoolParams& p);
Shape ResizeOutputShape(const Shape& input, int out_h, int out_w);
Shape AddOutputShape(const Shape& a, const Shape& b);
Shape ConcatOutputShape(std::span<const Shape> inputs);

// Conv/depthwise/FC filter shapes: (kh, kw, cin, cout), (kh, kw, c, 1) and
// (1, 1, rows, cols).
void CheckBiasLength(size_t bias_len, int expected, const char* op);

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_OP_PARAMS_H_
