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

#include "infer_bench/kernels/reference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/kernels/quantization.h"

namespace infer_bench {
namespace detail {

std::span<const float> FloatBias(const Bias& bias, const char* op) {
  const auto* v = std::get_if<std::vector<float>>(&bias);
  if (v == nullptr) {
    throw BenchError(ErrorKind::kDTypeMismatch, "bias",
                     fmt::format("{}: float layer needs a float bias", op));
  }
  return *v;
}

std::span<const int32_t> Int32Bias(const Bias& bias, const char* op) {
  const auto* v = std::get_if<std::vector<int32_t>>(&bias);
  if (v == nullptr) {
    throw BenchError(ErrorKind::kDTypeMismatch, "bias",
                     fmt::format("{}: quantized layer needs an int32 bias",
                                 op));
  }
  return *v;
}

void RequireSameDType(const Tensor& a, const Tensor& b, const char* op) {
  if (a.dtype() != b.dtype()) {
    throw BenchError(ErrorKind::kDTypeMismatch, "dtype",
                     fmt::format("{}: operand dtypes {} and {} differ", op,
                                 DTypeName(a.dtype()), DTypeName(b.dtype())));
  }
}

}  // namespace detail

namespace ref {
namespace {

inline int64_t At(const Shape& s, int n, int h, int w, int c) {
  return ((static_cast<int64_t>(n) * s.h + h) * s.w + w) * s.c + c;
}

inline float Activate(float v, Activation a) {
  return (a == Activation::kRelu && !(v > 0.0f)) ? 0.0f : v;
}

void RequireFloat(const Tensor& t, const char* op, const char* what) {
  if (t.dtype() != DType::kFloat32) {
    throw BenchError(ErrorKind::kDTypeMismatch, what,
                     fmt::format("{}: {} must be float32", op, what));
  }
}

void RequireInt8(const Tensor& t, const char* op, const char* what) {
  if (t.dtype() != DType::kInt8Q) {
    throw BenchError(ErrorKind::kDTypeMismatch, what,
                     fmt::format("{}: {} must be int8q", op, what));
  }
}

}  // namespace

Tensor Conv2D(const Tensor& input, const Tensor& filter,
              std::span<const float> bias, const ConvParams& params) {
  RequireFloat(input, "conv2d", "input");
  RequireFloat(filter, "conv2d", "filter");
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = Conv2DOutputShape(is, fs, params);
  CheckBiasLength(bias.size(), fs.c, "conv2d");
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");

  const auto x = input.floats();
  const auto w = filter.floats();
  Tensor out = Tensor::Zeros(os);
  auto y = out.mutable_floats();
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        for (int oc = 0; oc < os.c; ++oc) {
          float acc = 0.0f;
          for (int kh = 0; kh < fs.n; ++kh) {
            const int ih = oh * params.stride_h - wh.pad_before + kh;
            if (ih < 0 || ih >= is.h) continue;
            for (int kw = 0; kw < fs.h; ++kw) {
              const int iw = ow * params.stride_w - ww.pad_before + kw;
              if (iw < 0 || iw >= is.w) continue;
              for (int ic = 0; ic < is.c; ++ic) {
                acc += x[At(is, n, ih, iw, ic)] *
                       w[At(fs, kh, kw, ic, oc)];
              }
            }
          }
          y[At(os, n, oh, ow, oc)] = Activate(acc + bias[oc],
                                              params.activation);
        }
      }
    }
  }
  return out;
}

Tensor DepthwiseConv2D(const Tensor& input, const Tensor& filter,
                       std::span<const float> bias, const ConvParams& params) {
  RequireFloat(input, "depthwise_conv2d", "input");
  RequireFloat(filter, "depthwise_conv2d", "filter");
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = DepthwiseOutputShape(is, fs, params);
  CheckBiasLength(bias.size(), is.c, "depthwise_conv2d");
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");

  const auto x = input.floats();
  const auto w = filter.floats();
  Tensor out = Tensor::Zeros(os);
  auto y = out.mutable_floats();
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        for (int c = 0; c < os.c; ++c) {
          float acc = 0.0f;
          for (int kh = 0; kh < fs.n; ++kh) {
            const int ih = oh * params.stride_h - wh.pad_before + kh;
            if (ih < 0 || ih >= is.h) continue;
            for (int kw = 0; kw < fs.h; ++kw) {
              const int iw = ow * params.stride_w - ww.pad_before + kw;
              if (iw < 0 || iw >= is.w) continue;
              acc += x[At(is, n, ih, iw, c)] * w[At(fs, kh, kw, c, 0)];
            }
          }
          y[At(os, n, oh, ow, c)] = Activate(acc + bias[c], params.activation);
        }
      }
    }
  }
  return out;
}

Tensor FullyConnected(const Tensor& input, const Tensor& filter,
                      std::span<const float> bias, Activation activation) {
  RequireFloat(input, "fully_connected", "input");
  RequireFloat(filter, "fully_connected", "filter");
  const Shape os = FullyConnectedOutputShape(input.shape(), filter.shape());
  const int rows = filter.shape().w;
  const int cols = filter.shape().c;
  CheckBiasLength(bias.size(), cols, "fully_connected");
  const auto x = input.floats();
  const auto w = filter.floats();
  Tensor out = Tensor::Zeros(os);
  auto y = out.mutable_floats();
  for (int n = 0; n < os.n; ++n) {
    const auto xn = x.subspan(static_cast<size_t>(n) * rows, rows);
    for (int j = 0; j < cols; ++j) {
      float acc = 0.0f;
      for (int i = 0; i < rows; ++i) {
        acc += xn[i] * w[static_cast<size_t>(i) * cols + j];
      }
      y[static_cast<size_t>(n) * cols + j] = Activate(acc + bias[j],
                                                      activation);
    }
  }
  return out;
}

Tensor Pool(const Tensor& input, const PoolParams& params) {
  const Shape& is = input.shape();
  const Shape os = PoolOutputShape(is, params);
  const Window1D wh = ComputeWindow(is.h, params.window_h, params.stride_h,
                                    params.padding, "height");
  const Window1D ww = ComputeWindow(is.w, params.window_w, params.stride_w,
                                    params.padding, "width");
  const bool quantized = input.dtype() == DType::kInt8Q;
  std::vector<float> fout;
  std::vector<int8_t> qout;
  if (quantized) {
    qout.resize(static_cast<size_t>(os.elements()));
  } else {
    fout.resize(static_cast<size_t>(os.elements()));
  }
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        for (int c = 0; c < os.c; ++c) {
          int count = 0;
          float fmax = -std::numeric_limits<float>::infinity();
          float fsum = 0.0f;
          int qmax = -128;
          int64_t qsum = 0;
          for (int kh = 0; kh < params.window_h; ++kh) {
            const int ih = oh * params.stride_h - wh.pad_before + kh;
            if (ih < 0 || ih >= is.h) continue;
            for (int kw = 0; kw < params.window_w; ++kw) {
              const int iw = ow * params.stride_w - ww.pad_before + kw;
              if (iw < 0 || iw >= is.w) continue;
              ++count;
              if (quantized) {
                const int v = input.int8s()[At(is, n, ih, iw, c)];
                qmax = std::max(qmax, v);
                qsum += v;
              } else {
                const float v = input.floats()[At(is, n, ih, iw, c)];
                fmax = std::max(fmax, v);
                fsum += v;
              }
            }
          }
          const int64_t o = At(os, n, oh, ow, c);
          if (quantized) {
            qout[o] = params.kind == PoolKind::kMax
                          ? static_cast<int8_t>(qmax)
                          : SaturateInt8(RoundDiv(qsum, count));
          } else {
            fout[o] = params.kind == PoolKind::kMax
                          ? fmax
                          : fsum / static_cast<float>(count);
          }
        }
      }
    }
  }
  if (quantized) {
    return Tensor::FromInt8(os, std::move(qout), input.qparams());
  }
  return Tensor::FromFloats(os, std::move(fout));
}

namespace {

struct Sample {
  int lo = 0;
  int hi = 0;
  float frac = 0.0f;
};

std::vector<Sample> BilinearSamples(int in, int out) {
  std::vector<Sample> s(out);
  const double scale = static_cast<double>(in) / out;
  for (int i = 0; i < out; ++i) {
    double src = (i + 0.5) * scale - 0.5;
    if (src < 0.0) src = 0.0;
    int lo = static_cast<int>(std::floor(src));
    if (lo > in - 1) lo = in - 1;
    s[i].lo = lo;
    s[i].hi = std::min(lo + 1, in - 1);
    s[i].frac = static_cast<float>(src - lo);
  }
  return s;
}

Tensor ResizeFloat(const Tensor& input, int out_h, int out_w) {
  const Shape& is = input.shape();
  const Shape os = ResizeOutputShape(is, out_h, out_w);
  const auto ys = BilinearSamples(is.h, out_h);
  const auto xs = BilinearSamples(is.w, out_w);
  const auto x = input.floats();
  Tensor out = Tensor::Zeros(os);
  auto y = out.mutable_floats();
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      const Sample& sy = ys[oh];
      for (int ow = 0; ow < os.w; ++ow) {
        const Sample& sx = xs[ow];
        for (int c = 0; c < os.c; ++c) {
          const float p00 = x[At(is, n, sy.lo, sx.lo, c)];
          const float p01 = x[At(is, n, sy.lo, sx.hi, c)];
          const float p10 = x[At(is, n, sy.hi, sx.lo, c)];
          const float p11 = x[At(is, n, sy.hi, sx.hi, c)];
          const float top = (1.0f - sx.frac) * p00 + sx.frac * p01;
          const float bottom = (1.0f - sx.frac) * p10 + sx.frac * p11;
          y[At(os, n, oh, ow, c)] = (1.0f - sy.frac) * top + sy.frac * bottom;
        }
      }
    }
  }
  return out;
}

}  // namespace

Tensor ResizeBilinear(const Tensor& input, int out_h, int out_w) {
  if (input.dtype() == DType::kInt8Q) {
    return Quantize(ResizeFloat(Dequantize(input), out_h, out_w),
                    input.qparams());
  }
  return ResizeFloat(input, out_h, out_w);
}

Tensor Relu(const Tensor& input) {
  if (input.dtype() == DType::kInt8Q) {
    const auto src = input.int8s();
    const int zp = input.qparams().zero_point;
    std::vector<int8_t> out(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
      out[i] = static_cast<int8_t>(std::max<int>(src[i], zp));
    }
    return Tensor::FromInt8(input.shape(), std::move(out), input.qparams());
  }
  const auto src = input.floats();
  std::vector<float> out(src.size());
  for (size_t i = 0; i < src.size(); ++i) out[i] = src[i] > 0.0f ? src[i] : 0.0f;
  return Tensor::FromFloats(input.shape(), std::move(out));
}

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireFloat(a, "add", "lhs");
  RequireFloat(b, "add", "rhs");
  const Shape os = AddOutputShape(a.shape(), b.shape());
  const auto x = a.floats();
  const auto y = b.floats();
  std::vector<float> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return Tensor::FromFloats(os, std::move(out));
}

Tensor Concat(std::span<const Tensor* const> inputs) {
  std::vector<Shape> shapes;
  for (const Tensor* t : inputs) {
    RequireFloat(*t, "concat_channels", "input");
    shapes.push_back(t->shape());
  }
  const Shape os = ConcatOutputShape(shapes);
  Tensor out = Tensor::Zeros(os);
  auto y = out.mutable_floats();
  const int64_t pixels = static_cast<int64_t>(os.n) * os.h * os.w;
  int offset = 0;
  for (const Tensor* t : inputs) {
    const auto x = t->floats();
    const int c = t->shape().c;
    for (int64_t p = 0; p < pixels; ++p) {
      for (int k = 0; k < c; ++k) y[p * os.c + offset + k] = x[p * c + k];
    }
    offset += c;
  }
  return out;
}

Tensor Softmax(const Tensor& input) {
  RequireFloat(input, "softmax", "input");
  const Shape& s = input.shape();
  const auto x = input.floats();
  Tensor out = Tensor::Zeros(s);
  auto y = out.mutable_floats();
  const int64_t pixels = static_cast<int64_t>(s.n) * s.h * s.w;
  for (int64_t p = 0; p < pixels; ++p) {
    const float* row = x.data() + p * s.c;
    float* dst = y.data() + p * s.c;
    float m = row[0];
    for (int k = 1; k < s.c; ++k) m = std::max(m, row[k]);
    double sum = 0.0;
    for (int k = 0; k < s.c; ++k) {
      dst[k] = std::exp(row[k] - m);
      sum += dst[k];
    }
    for (int k = 0; k < s.c; ++k) {
      dst[k] = static_cast<float>(dst[k] / sum);
    }
  }
  return out;
}

Tensor QuantizedAdd(const Tensor& a, const Tensor& b, const QuantParams& out) {
  RequireInt8(a, "add", "lhs");
  RequireInt8(b, "add", "rhs");
  const Shape os = AddOutputShape(a.shape(), b.shape());
  const auto x = a.int8s();
  const auto y = b.int8s();
  std::vector<int8_t> q(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const float v = DequantizeValue(x[i], a.qparams()) +
                    DequantizeValue(y[i], b.qparams());
    q[i] = QuantizeValue(v, out);
  }
  return Tensor::FromInt8(os, std::move(q), out);
}

Tensor QuantizedConcat(std::span<const Tensor* const> inputs,
                       const QuantParams& out) {
  std::vector<Shape> shapes;
  for (const Tensor* t : inputs) {
    RequireInt8(*t, "concat_channels", "input");
    shapes.push_back(t->shape());
  }
  const Shape os = ConcatOutputShape(shapes);
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  const int64_t pixels = static_cast<int64_t>(os.n) * os.h * os.w;
  int offset = 0;
  for (const Tensor* t : inputs) {
    const auto x = t->int8s();
    const QuantParams& qp = t->qparams();
    const int c = t->shape().c;
    for (int64_t p = 0; p < pixels; ++p) {
      for (int k = 0; k < c; ++k) {
        y[p * os.c + offset + k] =
            QuantizeValue(DequantizeValue(x[p * c + k], qp), out);
      }
    }
    offset += c;
  }
  return Tensor::FromInt8(os, std::move(y), out);
}

Tensor QuantizedSoftmax(const Tensor& input, const QuantParams& out) {
  RequireInt8(input, "softmax", "input");
  return Quantize(Softmax(Dequantize(input)), out);
}

Tensor QConv2D(const Tensor& input, const Tensor& filter,
               std::span<const int32_t> bias, const ConvParams& params,
               const QuantParams& out_qp) {
  RequireInt8(input, "conv2d", "input");
  RequireInt8(filter, "conv2d", "filter");
  ValidateQuantParams(out_qp);
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = Conv2DOutputShape(is, fs, params);
  CheckBiasLength(bias.size(), fs.c, "conv2d");
  CheckQuantizedReduction(fs.n, fs.h, fs.w);
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), out_qp);
  const int32_t floor_q =
      params.activation == Activation::kRelu ? out_qp.zero_point : -128;

  const auto x = input.int8s();
  const auto w = filter.int8s();
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        for (int oc = 0; oc < os.c; ++oc) {
          int32_t acc = 0;
          for (int kh = 0; kh < fs.n; ++kh) {
            const int ih = oh * params.stride_h - wh.pad_before + kh;
            if (ih < 0 || ih >= is.h) continue;
            for (int kw = 0; kw < fs.h; ++kw) {
              const int iw = ow * params.stride_w - ww.pad_before + kw;
              if (iw < 0 || iw >= is.w) continue;
              for (int ic = 0; ic < is.c; ++ic) {
                acc += (x[At(is, n, ih, iw, ic)] - in_zp) *
                       (w[At(fs, kh, kw, ic, oc)] - w_zp);
              }
            }
          }
          y[At(os, n, oh, ow, oc)] =
              Requantize(acc, bias[oc], multiplier, out_qp.zero_point, floor_q);
        }
      }
    }
  }
  return Tensor::FromInt8(os, std::move(y), out_qp);
}

Tensor QDepthwiseConv2D(const Tensor& input, const Tensor& filter,
                        std::span<const int32_t> bias, const ConvParams& params,
                        const QuantParams& out_qp) {
  RequireInt8(input, "depthwise_conv2d", "input");
  RequireInt8(filter, "depthwise_conv2d", "filter");
  ValidateQuantParams(out_qp);
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = DepthwiseOutputShape(is, fs, params);
  CheckBiasLength(bias.size(), is.c, "depthwise_conv2d");
  CheckQuantizedReduction(fs.n, fs.h, 1);
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), out_qp);
  const int32_t floor_q =
      params.activation == Activation::kRelu ? out_qp.zero_point : -128;

  const auto x = input.int8s();
  const auto w = filter.int8s();
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  for (int n = 0; n < os.n; ++n) {
    for (int oh = 0; oh < os.h; ++oh) {
      for (int ow = 0; ow < os.w; ++ow) {
        for (int c = 0; c < os.c; ++c) {
          int32_t acc = 0;
          for (int kh = 0; kh < fs.n; ++kh) {
            const int ih = oh * params.stride_h - wh.pad_before + kh;
            if (ih < 0 || ih >= is.h) continue;
            for (int kw = 0; kw < fs.h; ++kw) {
              const int iw = ow * params.stride_w - ww.pad_before + kw;
              if (iw < 0 || iw >= is.w) continue;
              acc += (x[At(is, n, ih, iw, c)] - in_zp) *
                     (w[At(fs, kh, kw, c, 0)] - w_zp);
            }
          }
          y[At(os, n, oh, ow, c)] =
              Requantize(acc, bias[c], multiplier, out_qp.zero_point, floor_q);
        }
      }
    }
  }
  return Tensor::FromInt8(os, std::move(y), out_qp);
}

Tensor QFullyConnected(const Tensor& input, const Tensor& filter,
                       std::span<const int32_t> bias, Activation activation,
                       const QuantParams& out_qp) {
  RequireInt8(input, "fully_connected", "input");
  RequireInt8(filter, "fully_connected", "filter");
  ValidateQuantParams(out_qp);
  const Shape os = FullyConnectedOutputShape(input.shape(), filter.shape());
  const int rows = filter.shape().w;
  const int cols = filter.shape().c;
  CheckBiasLength(bias.size(), cols, "fully_connected");
  CheckQuantizedReduction(1, 1, rows);
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), out_qp);
  const int32_t floor_q =
      activation == Activation::kRelu ? out_qp.zero_point : -128;
  const auto x = input.int8s();
  const auto w = filter.int8s();
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  for (int n = 0; n < os.n; ++n) {
    for (int j = 0; j < cols; ++j) {
      int32_t acc = 0;
      for (int i = 0; i < rows; ++i) {
        acc += (x[static_cast<size_t>(n) * rows + i] - in_zp) *
               (w[static_cast<size_t>(i) * cols + j] - w_zp);
      }
      y[static_cast<size_t>(n) * cols + j] =
          Requantize(acc, bias[j], multiplier, out_qp.zero_point, floor_q);
    }
  }
  return Tensor::FromInt8(os, std::move(y), out_qp);
}

}  // namespace ref

Tensor ReferenceKernels::Conv2D(const Tensor& input, const Tensor& filter,
                                const Bias& bias, const ConvParams& params,
                                const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() == DType::kInt8Q) {
    return ref::QConv2D(input, filter, detail::Int32Bias(bias, "conv2d"), params,
                        RequireOutQParams(out_qp, OpKind::kConv2D));
  }
  return ref::Conv2D(input, filter, detail::FloatBias(bias, "conv2d"), params);
}

Tensor ReferenceKernels::DepthwiseConv2D(
    const Tensor& input, const Tensor& filter, const Bias& bias,
    const ConvParams& params, const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() == DType::kInt8Q) {
    return ref::QDepthwiseConv2D(
        input, filter, detail::Int32Bias(bias, "depthwise_conv2d"), params,
        RequireOutQParams(out_qp, OpKind::kDepthwiseConv2D));
  }
  return ref::DepthwiseConv2D(input, filter,
                              detail::FloatBias(bias, "depthwise_conv2d"),
                              params);
}

Tensor ReferenceKernels::FullyConnected(
    const Tensor& input, const Tensor& filter, const Bias& bias,
    Activation activation, const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() == DType::kInt8Q) {
    return ref::QFullyConnected(
        input, filter, detail::Int32Bias(bias, "fully_connected"), activation,
        RequireOutQParams(out_qp, OpKind::kFullyConnected));
  }
  return ref::FullyConnected(input, filter,
                             detail::FloatBias(bias, "fully_connected"),
                             activation);
}

Tensor ReferenceKernels::Pool(const Tensor& input,
                              const PoolParams& params) const {
  return ref::Pool(input, params);
}

Tensor ReferenceKernels::ResizeBilinear(const Tensor& input, int out_h,
                                        int out_w) const {
  return ref::ResizeBilinear(input, out_h, out_w);
}

Tensor ReferenceKernels::Add(const Tensor& a, const Tensor& b,
                             const std::optional<QuantParams>& out_qp) const {
  detail::RequireSameDType(a, b, "add");
  if (a.dtype() == DType::kInt8Q) {
    return ref::QuantizedAdd(a, b, RequireOutQParams(out_qp, OpKind::kAdd));
  }
  return ref::Add(a, b);
}

Tensor ReferenceKernels::Relu(const Tensor& input) const {
  return ref::Relu(input);
}

Tensor ReferenceKernels::Concat(std::span<const Tensor* const> inputs,
                                const std::optional<QuantParams>& out_qp) const {
  if (!inputs.empty() && inputs[0]->dtype() == DType::kInt8Q) {
    return ref::QuantizedConcat(inputs,
                                RequireOutQParams(out_qp, OpKind::kConcat));
  }
  return ref::Concat(inputs);
}

Tensor ReferenceKernels::Softmax(const Tensor& input,
                                 const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() == DType::kInt8Q) {
    return ref::QuantizedSoftmax(input,
                                 RequireOutQParams(out_qp, OpKind::kSoftmax));
  }
  return ref::Softmax(input);
}

}  // namespace infer_bench
