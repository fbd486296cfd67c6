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

#include "infer_bench/kernels/backend_kernels.h"

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

std::string_view OpKindName(OpKind kind) {
  switch (kind) {
    case OpKind::kConv2D:
      return "conv2d";
    case OpKind::kDepthwiseConv2D:
      return "depthwise_conv2d";
    case OpKind::kFullyConnected:
      return "fully_connected";
    case OpKind::kPool:
      return "pool";
    case OpKind::kResizeBilinear:
      return "resize_bilinear";
    case OpKind::kAdd:
      return "add";
    case OpKind::kRelu:
      return "relu";
    case OpKind::kConcat:
      return "concat_channels";
    case OpKind::kSoftmax:
      return "softmax";
  }
  return "unknown";
}

OpKind ParseOpKind(std::string_view name) {
  for (OpKind k : kAllOpKinds) {
    if (OpKindName(k) == name) return k;
  }
  throw BenchError(ErrorKind::kParse, std::string(name),
                   fmt::format("unknown op kind '{}'", name));
}

void BackendKernels::Unsupported(OpKind kind, DType dtype) const {
  throw BenchError(ErrorKind::kUnsupportedOp, std::string(OpKindName(kind)),
                   fmt::format("backend '{}' has no {} kernel for {}", name(),
                               OpKindName(kind), DTypeName(dtype)));
}

Tensor BackendKernels::Conv2D(const Tensor& input, const Tensor&, const Bias&,
                              const ConvParams&,
                              const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kConv2D, input.dtype());
}

Tensor BackendKernels::DepthwiseConv2D(const Tensor& input, const Tensor&,
                                       const Bias&, const ConvParams&,
                                       const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kDepthwiseConv2D, input.dtype());
}

Tensor BackendKernels::FullyConnected(const Tensor& input, const Tensor&,
                                      const Bias&, Activation,
                                      const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kFullyConnected, input.dtype());
}

Tensor BackendKernels::Pool(const Tensor& input, const PoolParams&) const {
  Unsupported(OpKind::kPool, input.dtype());
}

Tensor BackendKernels::ResizeBilinear(const Tensor& input, int, int) const {
  Unsupported(OpKind::kResizeBilinear, input.dtype());
}

Tensor BackendKernels::Add(const Tensor& a, const Tensor&,
                           const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kAdd, a.dtype());
}

Tensor BackendKernels::Relu(const Tensor& input) const {
  Unsupported(OpKind::kRelu, input.dtype());
}

Tensor BackendKernels::Concat(std::span<const Tensor* const> inputs,
                              const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kConcat,
              inputs.empty() ? DType::kFloat32 : inputs[0]->dtype());
}

Tensor BackendKernels::Softmax(const Tensor& input,
                               const std::optional<QuantParams>&) const {
  Unsupported(OpKind::kSoftmax, input.dtype());
}

const QuantParams& RequireOutQParams(const std::optional<QuantParams>& out_qp,
                                     OpKind kind) {
  if (!out_qp) {
    throw BenchError(ErrorKind::kDTypeMismatch, "out_qp",
                     fmt::format("quantized {} needs output quantization "
                                 "parameters",
                                 OpKindName(kind)));
  }
  ValidateQuantParams(*out_qp);
  return *out_qp;
}

}  // namespace infer_bench
