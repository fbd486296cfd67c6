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

#ifndef INFER_BENCH_KERNELS_REFERENCE_H_
#define INFER_BENCH_KERNELS_REFERENCE_H_

#include <span>

#include "infer_bench/kernels/backend_kernels.h"

// Reference kernels: plain nested loops, no blocking, no threads. They are the
// correctness oracle for every other backend and cover every op in both
// dtypes.
namespace infer_bench::ref {

Tensor Conv2D(const Tensor& input, const Tensor& filter,
              std::span<const float> bias, const ConvParams& params);
Tensor DepthwiseConv2D(const Tensor& input, const Tensor& filter,
                       std::span<const float> bias, const ConvParams& params);
Tensor FullyConnected(const Tensor& input, const Tensor& filter,
                      std::span<const float> bias,
                      Activation activation = Activation::kNone);

// Float and int8 (int8 keeps the input's quantization parameters).
Tensor Pool(const Tensor& input, const PoolParams& params);
// Half-pixel centres (align_corners = false); int8 resamples in the real
// domain and requantizes with the input's parameters.
Tensor ResizeBilinear(const Tensor& input, int out_h, int out_w);
Tensor Relu(const Tensor& input);

Tensor Add(const Tensor& a, const Tensor& b);
Tensor Concat(std::span<const Tensor* const> inputs);
// Normalizes over the channel axis at every (n, h, w).
Tensor Softmax(const Tensor& input);

Tensor QuantizedAdd(const Tensor& a, const Tensor& b, const QuantParams& out);
Tensor QuantizedConcat(std::span<const Tensor* const> inputs,
                       const QuantParams& out);
Tensor QuantizedSoftmax(const Tensor& input, const QuantParams& out);

// int32 MAC accumulation, requantized to `out_qp`. Padding contributes the
// input zero point (real zero).
Tensor QConv2D(const Tensor& input, const Tensor& filter,
               std::span<const int32_t> bias, const ConvParams& params,
               const QuantParams& out_qp);
Tensor QDepthwiseConv2D(const Tensor& input, const Tensor& filter,
                        std::span<const int32_t> bias, const ConvParams& params,
                        const QuantParams& out_qp);
Tensor QFullyConnected(const Tensor& input, const Tensor& filter,
                       std::span<const int32_t> bias, Activation activation,
                       const QuantParams& out_qp);

}  // namespace infer_bench::ref

namespace infer_bench {

class ReferenceKernels final : public BackendKernels {
 public:
  std::string_view name() const override { return "reference"; }

  Tensor Conv2D(const Tensor& input, const Tensor& filter, const Bias& bias,
                const ConvParams& params,
                const std::optional<QuantParams>& out_qp) const override;
  Tensor DepthwiseConv2D(const Tensor& input, const Tensor& filter,
                         const Bias& bias, const ConvParams& params,
                         const std::optional<QuantParams>& out_qp) const override;
  Tensor FullyConnected(const Tensor& input, const Tensor& filter,
                        const Bias& bias, Activation activation,
                        const std::optional<QuantParams>& out_qp) const override;
  Tensor Pool(const Tensor& input, const PoolParams& params) const override;
  Tensor ResizeBilinear(const Tensor& input, int out_h,
                        int out_w) const override;
  Tensor Add(const Tensor& a, const Tensor& b,
             const std::optional<QuantParams>& out_qp) const override;
  Tensor Relu(const Tensor& input) const override;
  Tensor Concat(std::span<const Tensor* const> inputs,
                const std::optional<QuantParams>& out_qp) const override;
  Tensor Softmax(const Tensor& input,
                 const std::optional<QuantParams>& out_qp) const override;
};

// Shared argument checks used by all backends.
namespace detail {
std::span<const float> FloatBias(const Bias& bias, const char* op);
std::span<const int32_t> Int32Bias(const Bias& bias, const char* op);
void RequireSameDType(const Tensor& a, const Tensor& b, const char* op);
inline double RealMultiplier(const QuantParams& in, const QuantParams& filter,
                             const QuantParams& out) {
  return static_cast<double>(in.scale) * static_cast<double>(filter.scale) /
         static_cast<double>(out.scale);
}
}  // namespace detail

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_REFERENCE_H_
