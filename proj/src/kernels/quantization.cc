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

#include "infer_bench/kernels/quantization.h"

#include <limits>

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

Tensor Quantize(const Tensor& input, const QuantParams& qp) {
  ValidateQuantParams(qp);
  const auto src = input.floats();
  std::vector<int8_t> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) out[i] = QuantizeValue(src[i], qp);
  return Tensor::FromInt8(input.shape(), std::move(out), qp);
}

Tensor Dequantize(const Tensor& input) {
  const auto src = input.int8s();
  const QuantParams& qp = input.qparams();
  std::vector<float> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) out[i] = DequantizeValue(src[i], qp);
  return Tensor::FromFloats(input.shape(), std::move(out));
}

QuantParams ChooseQuantParams(float lo, float hi) {
  const double min_v = std::min(0.0, static_cast<double>(lo));
  const double max_v = std::max(0.0, static_cast<double>(hi));
  QuantParams qp;
  const double range = max_v - min_v;
  if (!(range > 0.0) || !std::isfinite(range)) {
    qp.scale = 1.0f;
    qp.zero_point = 0;
    return qp;
  }
  qp.scale = static_cast<float>(range / 255.0);
  if (!(qp.scale > 0.0f)) qp.scale = std::numeric_limits<float>::min();
  const double zp = std::round(-128.0 - min_v / qp.scale);
  qp.zero_point = static_cast<int32_t>(std::clamp(zp, -128.0, 127.0));
  return qp;
}

std::vector<int32_t> QuantizeBias(std::span<const float> bias,
                                  float input_scale, float filter_scale) {
  const double unit = static_cast<double>(input_scale) * filter_scale;
  std::vector<int32_t> out(bias.size());
  for (size_t i = 0; i < bias.size(); ++i) {
    const double q = std::round(static_cast<double>(bias[i]) / unit);
    out[i] = static_cast<int32_t>(std::clamp(
        q, static_cast<double>(std::numeric_limits<int32_t>::min()),
        static_cast<double>(std::numeric_limits<int32_t>::max())));
  }
  return out;
}

void CheckQuantizedReduction(int kh, int kw, int cin) {
  if (kh > kMaxQuantizedKernel || kw > kMaxQuantizedKernel) {
    throw BenchError(ErrorKind::kInvalidArgument, "kernel",
                     fmt::format("quantized kernel {}x{} exceeds {}x{}", kh, kw,
                                 kMaxQuantizedKernel, kMaxQuantizedKernel));
  }
  if (cin > kMaxQuantizedInputChannels) {
    throw BenchError(ErrorKind::kInvalidArgument, "channels",
                     fmt::format("quantized reduction over {} input channels "
                                 "exceeds {}",
                                 cin, kMaxQuantizedInputChannels));
  }
  const int64_t reduction = static_cast<int64_t>(kh) * kw * cin;
  if (reduction > kMaxQuantizedReduction) {
    throw BenchError(ErrorKind::kInvalidArgument, "reduction",
                     fmt::format("quantized reduction length {} may overflow "
                                 "the int32 accumulator (limit {})",
                                 reduction, kMaxQuantizedReduction));
  }
}

}  // namespace infer_bench
