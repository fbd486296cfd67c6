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

#ifndef INFER_BENCH_KERNELS_OPTIMIZED_H_
#define INFER_BENCH_KERNELS_OPTIMIZED_H_

#include <cstdint>
#include <functional>
#include <memory>

#include "infer_bench/kernels/backend_kernels.h"

namespace infer_bench {

// Fixed-size task decomposition over a private TBB arena. Work is split into
// tasks whose boundaries never depend on the thread count, and each output
// element is produced by exactly one task, so results are bit-identical for
// any `threads`.
class TaskRunner {
 public:
  explicit TaskRunner(int threads);
  ~TaskRunner();
  TaskRunner(const TaskRunner&) = delete;
  TaskRunner& operator=(const TaskRunner&) = delete;

  int threads() const { return threads_; }
  void Run(int64_t tasks, const std::function<void(int64_t)>& fn) const;

 private:
  struct Arena;
  int threads_;
  std::unique_ptr<Arena> arena_;
};

// Float32 kernels: im2col + register-blocked GEMM for convolutions,
// channel-vectorized loops elsewhere. No int8 support.
class OptimizedKernels final : public BackendKernels {
 public:
  explicit OptimizedKernels(int threads = 1);

  std::string_view name() const override { return "optimized"; }
  int threads() const { return runner_.threads(); }

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

 private:
  TaskRunner runner_;
};

// Int8 kernels for the MobileNet op set: conv2d, depthwise_conv2d,
// fully_connected, pool and softmax. Integer accumulation is exact, so output
// is bit-identical to the reference int8 kernels.
class QuantizedKernels final : public BackendKernels {
 public:
  explicit QuantizedKernels(int threads = 1);

  std::string_view name() const override { return "quantized"; }

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
  Tensor Softmax(const Tensor& input,
                 const std::optional<QuantParams>& out_qp) const override;

 private:
  TaskRunner runner_;
};

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_OPTIMIZED_H_
