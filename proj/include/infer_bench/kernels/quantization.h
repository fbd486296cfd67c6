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

#ifndef INFER_BENCH_KERNELS_QUANTIZATION_H_
#define INFER_BENCH_KERNELS_QUANTIZATION_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "infer_bench/kernels/tensor.h"

namespace infer_bench {

// All int8 arithmetic in every backend goes through these helpers so that
// backends agree bit-exactly. Rounding is half away from zero (std::round).

inline int8_t SaturateInt8(int64_t v) {
  return static_cast<int8_t>(std::clamp<int64_t>(v, -128, 127));
}

inline int8_t QuantizeValue(float x, const QuantParams& qp) {
  const double q = std::round(static_cast<double>(x) /
                              static_cast<double>(qp.scale));
  const double shifted = q + qp.zero_point;
  return static_cast<int8_t>(std::clamp(shifted, -128.0, 127.0));
}

inline float DequantizeValue(int8_t q, const QuantParams& qp) {
  return static_cast<float>(static_cast<double>(qp.scale) *
                            (static_cast<int32_t>(q) - qp.zero_point));
}

// q = clamp(round(acc * real_multiplier) + zero_point). `acc` is the int32 MAC
// sum, `bias` is added in 64-bit before scaling.
inline int8_t Requantize(int32_t acc, int32_t bias, double real_multiplier,
                         int32_t out_zero_point, int32_t floor_q) {
  const double scaled =
      std::round((static_cast<double>(acc) + static_cast<double>(bias)) *
                 real_multiplier);
  const double shifted = scaled + out_zero_point;
  return static_cast<int8_t>(
      std::clamp(shifted, static_cast<double>(floor_q), 127.0));
}

// Integer division rounding half away from zero; den > 0.
inline int64_t RoundDiv(int64_t num, int64_t den) {
  return num >= 0 ? (num + den / 2) / den : -((-num + den / 2) / den);
}

Tensor Quantize(const Tensor& input, const QuantParams& qp);
Tensor Dequantize(const Tensor& input);

// Asymmetric parameters covering [min(lo, 0), max(hi, 0)] with 256 levels.
QuantParams ChooseQuantParams(float lo, float hi);

// int32 bias in units of input_scale * filter_scale.
std::vector<int32_t> QuantizeBias(std::span<const float> bias,
                                  float input_scale, float filter_scale);

// Largest kh * kw * cin for which the int32 MAC sum cannot overflow:
// every product is bounded by 255 * 255.
inline constexpr int64_t kMaxQuantizedReduction = 2147483647LL / (255 * 255);
inline constexpr int kMaxQuantizedKernel = 9;
inline constexpr int kMaxQuantizedInputChannels = 1024;

// Rejects reductions whose worst case exceeds int32.
void CheckQuantizedReduction(int kh, int kw, int cin);

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_QUANTIZATION_H_
