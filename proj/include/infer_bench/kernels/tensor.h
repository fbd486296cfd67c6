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

#ifndef INFER_BENCH_KERNELS_TENSOR_H_
#define INFER_BENCH_KERNELS_TENSOR_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace infer_bench {

enum class DType : uint8_t { kFloat32, kInt8Q };

std::string DTypeName(DType dtype);

// Four extents. Activations read them as (batch, height, width, channels);
// filters as (kh, kw, cin, cout).
struct Shape {
  int n = 1;
  int h = 1;
  int w = 1;
  int c = 1;

  int64_t elements() const {
    return static_cast<int64_t>(n) * h * w * c;
  }
  std::string ToString() const;

  friend auto operator<=>(const Shape&, const Shape&) = default;
};

// Per-tensor asymmetric quantization: real = scale * (q - zero_point).
struct QuantParams {
  float scale = 1.0f;
  int32_t zero_point = 0;

  friend bool operator==(const QuantParams&, const QuantParams&) = default;
};

void ValidateQuantParams(const QuantParams& qp);

// Dense NHWC tensor, float32 or int8 with quantization parameters.
class Tensor {
 public:
  // A 1x1x1x1 float zero.
  Tensor();

  static Tensor Zeros(Shape shape);
  static Tensor FromFloats(Shape shape, std::vector<float> data);
  static Tensor FromInt8(Shape shape, std::vector<int8_t> data,
                         QuantParams qparams);

  const Shape& shape() const { return shape_; }
  DType dtype() const { return dtype_; }
  int64_t elements() const { return shape_.elements(); }
  size_t ByteSize() const;

  std::span<const float> floats() const;
  std::span<float> mutable_floats();
  std::span<const int8_t> int8s() const;
  std::span<int8_t> mutable_int8s();

  bool has_qparams() const { return qparams_.has_value(); }
  const QuantParams& qparams() const;

 private:
  Tensor(Shape shape, DType dtype);

  Shape shape_;
  DType dtype_ = DType::kFloat32;
  std::vector<float> f32_;
  std::vector<int8_t> i8_;
  std::optional<QuantParams> qparams_;
};

// Bias vectors sit outside Tensor: float for float layers, int32 (in units of
// input_scale * filter_scale) for quantized layers.
using Bias = std::variant<std::vector<float>, std::vector<int32_t>>;

size_t BiasLength(const Bias& bias);

void ValidateShape(const Shape& shape, const std::string& what);

}  // namespace infer_bench

#endif  // INFER_BENCH_KERNELS_TENSOR_H_
