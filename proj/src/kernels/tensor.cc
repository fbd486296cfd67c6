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

#include "infer_bench/kernels/tensor.h"

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

std::string DTypeName(DType dtype) {
  return dtype == DType::kFloat32 ? "float32" : "int8q";
}

std::string Shape::ToString() const {
  return fmt::format("{}x{}x{}x{}", n, h, w, c);
}

void ValidateShape(const Shape& shape, const std::string& what) {
  const int extents[4] = {shape.n, shape.h, shape.w, shape.c};
  static constexpr const char* kNames[4] = {"batch", "height", "width",
                                            "channels"};
  for (int i = 0; i < 4; ++i) {
    if (extents[i] < 1) {
      throw BenchError(ErrorKind::kInvalidArgument, kNames[i],
                       fmt::format("{} has non-positive {} extent {}", what,
                                   kNames[i], extents[i]));
    }
  }
}

void ValidateQuantParams(const QuantParams& qp) {
  if (!(qp.scale > 0.0f)) {
    throw BenchError(ErrorKind::kInvalidArgument, "scale",
                     fmt::format("quantization scale must be > 0, got {}",
                                 qp.scale));
  }
  if (qp.zero_point < -128 || qp.zero_point > 127) {
    throw BenchError(ErrorKind::kInvalidArgument, "zero_point",
                     fmt::format("zero point {} outside [-128, 127]",
                                 qp.zero_point));
  }
}

Tensor::Tensor() : shape_{}, dtype_(DType::kFloat32), f32_(1, 0.0f) {}

Tensor::Tensor(Shape shape, DType dtype) : shape_(shape), dtype_(dtype) {
  ValidateShape(shape, "tensor");
}

Tensor Tensor::Zeros(Shape shape) {
  Tensor t(shape, DType::kFloat32);
  t.f32_.assign(static_cast<size_t>(shape.elements()), 0.0f);
  return t;
}

Tensor Tensor::FromFloats(Shape shape, std::vector<float> data) {
  Tensor t(shape, DType::kFloat32);
  if (static_cast<int64_t>(data.size()) != shape.elements()) {
    throw BenchError(ErrorKind::kShapeMismatch, "data",
                     fmt::format("shape {} needs {} elements, got {}",
                                 shape.ToString(), shape.elements(),
                                 data.size()));
  }
  t.f32_ = std::move(data);
  return t;
}

Tensor Tensor::FromInt8(Shape shape, std::vector<int8_t> data,
                        QuantParams qparams) {
  ValidateQuantParams(qparams);
  Tensor t(shape, DType::kInt8Q);
  if (static_cast<int64_t>(data.size()) != shape.elements()) {
    throw BenchError(ErrorKind::kShapeMismatch, "data",
                     fmt::format("shape {} needs {} elements, got {}",
                                 shape.ToString(), shape.elements(),
                                 data.size()));
  }
  t.i8_ = std::move(data);
  t.qparams_ = qparams;
  return t;
}

size_t Tensor::ByteSize() const {
  return static_cast<size_t>(elements()) *
         (dtype_ == DType::kFloat32 ? sizeof(float) : sizeof(int8_t));
}

std::span<const float> Tensor::floats() const {
  if (dtype_ != DType::kFloat32) {
    throw BenchError(ErrorKind::kDTypeMismatch, "dtype",
                     "float access to an int8q tensor");
  }
  return f32_;
}

std::span<float> Tensor::mutable_floats() {
  if (dtype_ != DType::kFloat32) {
    throw BenchError(ErrorKind::kDTypeMismatch, "dtype",
                     "float access to an int8q tensor");
  }
  return f32_;
}

std::span<const int8_t> Tensor::int8s() const {
  if (dtype_ != DType::kInt8Q) {
    throw BenchError(ErrorKind::kDTypeMismatch, "dtype",
                     "int8 access to a float32 tensor");
  }
  return i8_;
}

std::span<int8_t> Tensor::mutable_int8s() {
  if (dtype_ != DType::kInt8Q) {
    throw BenchError(ErrorKind::kDTypeMismatch, "dtype",
                     "int8 access to a float32 tensor");
  }
  return i8_;
}

const QuantParams& Tensor::qparams() const {
  if (!qparams_) {
    throw BenchError(ErrorKind::kDTypeMismatch, "qparams",
                     "float32 tensor has no quantization parameters");
  }
  return *qparams_;
}

size_t BiasLength(const Bias& bias) {
  return std::visit([](const auto& v) { return v.size(); }, bias);
}

}  // namespace infer_bench
