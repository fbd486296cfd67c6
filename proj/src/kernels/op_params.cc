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

#include "infer_bench/kernels/op_params.h"

#include <algorithm>

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

std::string PaddingName(Padding p) {
  return p == Padding::kSame ? "same" : "valid";
}

std::string ActivationName(Activation a) {
  return a == Activation::kRelu ? "relu" : "none";
}

std::string PoolKindName(PoolKind k) {
  return k == PoolKind::kMax ? "max" : "avg";
}

Window1D ComputeWindow(int in, int kernel, int stride, Padding padding,
                       const char* dim) {
  if (kernel < 1 || stride < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, dim,
                     fmt::format("{}: kernel {} and stride {} must be >= 1",
                                 dim, kernel, stride));
  }
  Window1D w;
  if (padding == Padding::kSame) {
    w.out = (in + stride - 1) / stride;
    const int pad_total = std::max((w.out - 1) * stride + kernel - in, 0);
    w.pad_before = pad_total / 2;
    return w;
  }
  if (kernel > in) {
    throw BenchError(ErrorKind::kShapeMismatch, dim,
                     fmt::format("{}: window {} larger than input extent {}",
                                 dim, kernel, in));
  }
  w.out = (in - kernel) / stride + 1;
  return w;
}

Shape Conv2DOutputShape(const Shape& input, const Shape& filter,
                        const ConvParams& p) {
  ValidateShape(filter, "filter");
  // filter layout (kh, kw, cin, cout) stored in (n, h, w, c).
  if (filter.w != input.c) {
    throw BenchError(ErrorKind::kShapeMismatch, "channels",
                     fmt::format("conv2d input channels {} != filter cin {}",
                                 input.c, filter.w));
  }
  const Window1D wh = ComputeWindow(input.h, filter.n, p.stride_h, p.padding,
                                    "height");
  const Window1D ww = ComputeWindow(input.w, filter.h, p.stride_w, p.padding,
                                    "width");
  return Shape{input.n, wh.out, ww.out, filter.c};
}

Shape DepthwiseOutputShape(const Shape& input, const Shape& filter,
                           const ConvParams& p) {
  ValidateShape(filter, "filter");
  if (filter.w != input.c) {
    throw BenchError(
        ErrorKind::kShapeMismatch, "channels",
        fmt::format("depthwise input channels {} != filter channels {}",
                    input.c, filter.w));
  }
  if (filter.c != 1) {
    throw BenchError(ErrorKind::kShapeMismatch, "multiplier",
                     fmt::format("depthwise channel multiplier must be 1, "
                                 "got {}",
                                 filter.c));
  }
  const Window1D wh = ComputeWindow(input.h, filter.n, p.stride_h, p.padding,
                                    "height");
  const Window1D ww = ComputeWindow(input.w, filter.h, p.stride_w, p.padding,
                                    "width");
  return Shape{input.n, wh.out, ww.out, input.c};
}

Shape FullyConnectedOutputShape(const Shape& input, const Shape& filter) {
  ValidateShape(filter, "filter");
  const int64_t flat = static_cast<int64_t>(input.h) * input.w * input.c;
  if (filter.n != 1 || filter.h != 1) {
    throw BenchError(ErrorKind::kShapeMismatch, "filter",
                     "fully_connected filter must be (1, 1, rows, cols)");
  }
  if (flat != filter.w) {
    throw BenchError(ErrorKind::kShapeMismatch, "rows",
                     fmt::format("fully_connected flattened input {} != "
                                 "weight rows {}",
                                 flat, filter.w));
  }
  return Shape{input.n, 1, 1, filter.c};
}

Shape PoolOutputShape(const Shape& input, const PoolParams& p) {
  const Window1D wh = ComputeWindow(input.h, p.window_h, p.stride_h,
                                    p.padding, "height");
  const Window1D ww = ComputeWindow(input.w, p.window_w, p.stride_w,
                                    p.padding, "width");
  return Shape{input.n, wh.out, ww.out, input.c};
}

Shape ResizeOutputShape(const Shape& input, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, out_h < 1 ? "height" : "width",
                     fmt::format("resize target {}x{} must be >= 1", out_h,
                                 out_w));
  }
  return Shape{input.n, out_h, out_w, input.c};
}

Shape AddOutputShape(const Shape& a, const Shape& b) {
  if (a != b) {
    const char* dim = a.n != b.n   ? "batch"
                      : a.h != b.h ? "height"
                      : a.w != b.w ? "width"
                                   : "channels";
    throw BenchError(ErrorKind::kShapeMismatch, dim,
                     fmt::format("add operands {} and {} differ in {}",
                                 a.ToString(), b.ToString(), dim));
  }
  return a;
}

Shape ConcatOutputShape(std::span<const Shape> inputs) {
  if (inputs.empty()) {
    throw BenchError(ErrorKind::kInvalidArgument, "inputs",
                     "concat needs at least one input");
  }
  Shape out = inputs[0];
  out.c = 0;
  for (const Shape& s : inputs) {
    if (s.n != inputs[0].n || s.h != inputs[0].h || s.w != inputs[0].w) {
      const char* dim = s.n != inputs[0].n   ? "batch"
                        : s.h != inputs[0].h ? "height"
                                             : "width";
      throw BenchError(ErrorKind::kShapeMismatch, dim,
                       fmt::format("concat operand {} does not match {} in {}",
                                   s.ToString(), inputs[0].ToString(), dim));
    }
    out.c += s.c;
  }
  return out;
}

void CheckBiasLength(size_t bias_len, int expected, const char* op) {
  if (bias_len != static_cast<size_t>(expected)) {
    throw BenchError(ErrorKind::kShapeMismatch, "bias",
                     fmt::format("{} bias length {} != output channels {}", op,
                                 bias_len, expected));
  }
}

}  // namespace infer_bench
