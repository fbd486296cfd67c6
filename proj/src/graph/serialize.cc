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

#include "infer_bench/graph/serialize.h"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "infer_bench/common/error.h"

namespace infer_bench {

static_assert(std::endian::native == std::endian::little,
              "weight blobs are written in host byte order");

namespace {

constexpr char kMagic[4] = {'I', 'B', 'W', '1'};
constexpr uint32_t kMaxNameLength = 1 << 16;
constexpr int64_t kMaxElements = int64_t{1} << 30;

template <typename T>
void Put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

void PutName(std::ostream& out, const std::string& s) {
  Put<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
void PutArray(std::ostream& out, std::span<const T> v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size_bytes()));
}

void ReadExact(std::istream& in, void* dst, size_t n, const char* what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in.gcount()) != n) {
    throw BenchError(ErrorKind::kParse, what,
                     fmt::format("weight blob truncated while reading {}",
                                 what));
  }
}

template <typename T>
T Get(std::istream& in, const char* what) {
  T v;
  ReadExact(in, &v, sizeof(T), what);
  return v;
}

std::string GetName(std::istream& in) {
  const auto len = Get<uint32_t>(in, "name length");
  if (len > kMaxNameLength) {
    throw BenchError(ErrorKind::kParse, "name",
                     fmt::format("weight name length {} is implausible", len));
  }
  std::string s(len, '\0');
  ReadExact(in, s.data(), len, "name");
  return s;
}

}  // namespace

void SerializeWeights(const WeightStore& weights, std::ostream& out) {
  out.write(kMagic, 4);
  Put<uint32_t>(out, static_cast<uint32_t>(weights.tensors().size()));
  for (const auto& [name, t] : weights.tensors()) {
    PutName(out, name);
    Put<uint8_t>(out, static_cast<uint8_t>(t.dtype()));
    const Shape& s = t.shape();
    for (int d : {s.n, s.h, s.w, s.c}) Put<int32_t>(out, d);
    if (t.dtype() == DType::kInt8Q) {
      Put<float>(out, t.qparams().scale);
      Put<int32_t>(out, t.qparams().zero_point);
      PutArray(out, t.int8s());
    } else {
      PutArray(out, t.floats());
    }
  }
  Put<uint32_t>(out, static_cast<uint32_t>(weights.biases().size()));
  for (const auto& [name, b] : weights.biases()) {
    PutName(out, name);
    if (const auto* f = std::get_if<std::vector<float>>(&b)) {
      Put<uint8_t>(out, 0);
      Put<uint32_t>(out, static_cast<uint32_t>(f->size()));
      PutArray(out, std::span<const float>(*f));
    } else {
      const auto& q = std::get<std::vector<int32_t>>(b);
      Put<uint8_t>(out, 1);
      Put<uint32_t>(out, static_cast<uint32_t>(q.size()));
      PutArray(out, std::span<const int32_t>(q));
    }
  }
  if (!out) {
    throw BenchError(ErrorKind::kIo, "weights", "failed to write weight blob");
  }
}

WeightStore DeserializeWeights(std::istream& in) {
  char magic[4];
  ReadExact(in, magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw BenchError(ErrorKind::kParse, "magic", "not an IBW1 weight blob");
  }
  WeightStore store;
  const auto n_tensors = Get<uint32_t>(in, "tensor count");
  for (uint32_t i = 0; i < n_tensors; ++i) {
    std::string name = GetName(in);
    const auto dtype = Get<uint8_t>(in, "dtype");
    if (dtype > static_cast<uint8_t>(DType::kInt8Q)) {
      throw BenchError(ErrorKind::kParse, name,
                       fmt::format("tensor '{}' has unknown dtype {}", name,
                                   dtype));
    }
    Shape s;
    s.n = Get<int32_t>(in, "shape");
    s.h = Get<int32_t>(in, "shape");
    s.w = Get<int32_t>(in, "shape");
    s.c = Get<int32_t>(in, "shape");
    ValidateShape(s, name);
    if (s.elements() > kMaxElements) {
      throw BenchError(ErrorKind::kParse, name,
                       fmt::format("tensor '{}' claims {} elements", name,
                                   s.elements()));
    }
    const auto count = static_cast<size_t>(s.elements());
    if (static_cast<DType>(dtype) == DType::kInt8Q) {
      QuantParams qp;
      qp.scale = Get<float>(in, "scale");
      qp.zero_point = Get<int32_t>(in, "zero_point");
      std::vector<int8_t> data(count);
      ReadExact(in, data.data(), count, "int8 payload");
      store.AddTensor(name, Tensor::FromInt8(s, std::move(data), qp));
    } else {
      std::vector<float> data(count);
      ReadExact(in, data.data(), count * sizeof(float), "float payload");
      store.AddTensor(name, Tensor::FromFloats(s, std::move(data)));
    }
  }
  const auto n_biases = Get<uint32_t>(in, "bias count");
  for (uint32_t i = 0; i < n_biases; ++i) {
    std::string name = GetName(in);
    const auto kind = Get<uint8_t>(in, "bias kind");
    const auto len = Get<uint32_t>(in, "bias length");
    if (len > kMaxElements) {
      throw BenchError(ErrorKind::kParse, name,
                       fmt::format("bias '{}' claims {} entries", name, len));
    }
    if (kind == 0) {
      std::vector<float> v(len);
      ReadExact(in, v.data(), len * sizeof(float), "bias payload");
      store.AddBias(name, std::move(v));
    } else if (kind == 1) {
      std::vector<int32_t> v(len);
      ReadExact(in, v.data(), len * sizeof(int32_t), "bias payload");
      store.AddBias(name, std::move(v));
    } else {
      throw BenchError(ErrorKind::kParse, name,
                       fmt::format("bias '{}' has unknown kind {}", name,
                                   kind));
    }
  }
  return store;
}

std::string SerializeWeightsToString(const WeightStore& weights) {
  std::ostringstream out(std::ios::binary);
  SerializeWeights(weights, out);
  return std::move(out).str();
}

}  // namespace infer_bench
