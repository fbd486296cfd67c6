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

#ifndef INFER_BENCH_KERNELS_BACKEND_KERNELS_H_
#define INFER_BENCH_KERNELS_BACKEND_KERNELS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "infer_bench/kernels/op_params.h"
#include "infer_bench/kernels/tensor.h"

namespace infer_bench {

enum class OpKind {
  kConv2D,
  kDepthwiseConv2D,
  kFullyConnected,
  kPool,
  kResizeBilinear,
  kAdd,
  kRelu,
  kConcat,
  kSoftmax,
};

inline constexpr std::array<OpKind, 9> kAllOpKinds = {
    OpKind::kConv2D, OpKind::kDepthwiseConv2D, OpKind::kFullyConnected,
    OpKind::kPool,   OpKind::kResizeBilinear,  OpKind::kAdd,
    OpKind::kRelu,   OpKind::kConcat,          OpKind::kSoftmax,
};

std::string_view OpKindName(OpKind kind);
// Throws kParse on unknown names.
OpKind ParseOpKind(std::string_view name);

// One execution backend's kernel set. Every entry point handles both dtypes
// through `input.dtype()`; quantized variants take the output quantization
// parameters in `out_qp`. Entry points a backend does not provide throw
// kUnsupportedOp. Implementations are stateless from the caller's view and
// safe to call concurrently.
class BackendKernels {
 public:
  virtual ~BackendKernels() = default;

  virtual std::string_view name() const = 0;

  virtual Tensor Conv2D(const Tensor& input, const Tensor& filter,
                        const Bias& bias, const ConvParams& params,
                        const std::optional<QuantParams>& out_qp) const;
  virtual Tensor DepthwiseConv2D(const Tensor& input, const Tensor& filter,
                                 const Bias& bias, const ConvParams& params,
                                 const std::optional<QuantParams>& out_qp) const;
  virtual Tensor FullyConnected(const Tensor& input, const Tensor& filter,
                                const Bias& bias, Activation activation,
                                const std::optional<QuantParams>& out_qp) const;
  virtual Tensor Pool(const Tensor& input, const PoolParams& params) const;
  virtual Tensor ResizeBilinear(const Tensor& input, int out_h,
                                int out_w) const;
  virtual Tensor Add(const Tensor& a, const Tensor& b,
                     const std::optional<QuantParams>& out_qp) const;
  virtual Tensor Relu(const Tensor& input) const;
  virtual Tensor Concat(std::span<const Tensor* const> inputs,
                        const std::optional<QuantParams>& out_qp) const;
  virtual Tensor Softmax(const Tensor& input,
                         const std::optional<QuantParams>& out_qp) const;

 protected:
  [[noreturn]] void Unsupported(OpKind kind, DType dtype) const;
};

// Throws kDTypeMismatch unless a quantized call carries output qparams.
const QuantParams& RequireOutQParams(const std::optional<QuantParams>& out_qp,
                                     OpKind kind);

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_BACKEND_KERNELS_H_
