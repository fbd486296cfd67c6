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

#include "infer_bench/kernels/optimized.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/partitioner.h>
#include <tbb/task_arena.h>

#include "infer_bench/common/error.h"
#include "infer_bench/kernels/quantization.h"
#include "infer_bench/kernels/reference.h"

namespace infer_bench {

struct TaskRunner::Arena {
  explicit Arena(int threads) : arena(threads) {}
  tbb::task_arena arena;
};

TaskRunner::TaskRunner(int threads) : threads_(threads) {
  if (threads < 1) {
    throw BenchError(ErrorKind::kInvalidArgument, "threads",
                     fmt::format("thread count must be >= 1, got {}", threads));
  }
  if (threads > 1) arena_ = std::make_unique<Arena>(threads);
}

TaskRunner::~TaskRunner() = default;

void TaskRunner::Run(int64_t tasks,
                     const std::function<void(int64_t)>& fn) const {
  if (tasks <= 0) return;
  if (!arena_ || tasks == 1) {
    for (int64_t t = 0; t < tasks; ++t) fn(t);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(
        tbb::blocked_range<int64_t>(0, tasks, 1),
        [&](const tbb::blocked_range<int64_t>& r) {
          for (int64_t t = r.begin(); t != r.end(); ++t) fn(t);
        },
        tbb::simple_partitioner());
  });
}

namespace {

// Output pixels per GEMM task, micro-tile extents and the K block.
constexpr int kTileRows = 32;
constexpr int kMR = 8;
constexpr int kNR = 16;
constexpr int kKC = 256;

int RoundUp(int v, int m) { return (v + m - 1) / m * m; }

struct ConvGeometry {
  Shape is;
  Shape fs;
  Shape os;
  Window1D wh;
  Window1D ww;
  int stride_h = 1;
  int stride_w = 1;
  int k = 0;        // kh * kw * cin
  int n_pad = 0;    // cout rounded up to kNR
  int64_t m = 0;    // oh * ow
};

ConvGeometry MakeGeometry(const Shape& is, const Shape& fs, const Shape& os,
                          const ConvParams& p) {
  ConvGeometry g;
  g.is = is;
  g.fs = fs;
  g.os = os;
  g.wh = ComputeWindow(is.h, fs.n, p.stride_h, p.padding, "height");
  g.ww = ComputeWindow(is.w, fs.h, p.stride_w, p.padding, "width");
  g.stride_h = p.stride_h;
  g.stride_w = p.stride_w;
  g.k = fs.n * fs.h * fs.w;
  g.n_pad = RoundUp(fs.c, kNR);
  g.m = static_cast<int64_t>(os.h) * os.w;
  return g;
}

// B is (K x N) row-major; packed into panels of kNR columns, each panel a
// contiguous K x kNR block, zero padded past N.
template <typename T, typename Src, typename F>
std::vector<T> PackPanels(const Src* b, int k, int n, F transform) {
  const int panels = RoundUp(n, kNR) / kNR;
  std::vector<T> packed(static_cast<size_t>(panels) * k * kNR, T{0});
  for (int pj = 0; pj < panels; ++pj) {
    T* dst = packed.data() + static_cast<size_t>(pj) * k * kNR;
    const int cols = std::min(kNR, n - pj * kNR);
    for (int kk = 0; kk < k; ++kk) {
      const Src* row = b + static_cast<size_t>(kk) * n + pj * kNR;
      for (int j = 0; j < cols; ++j) dst[kk * kNR + j] = transform(row[j]);
    }
  }
  return packed;
}

// Fills rows [p0, p0 + rows) of the im2col matrix for batch `n`; rows past
// `rows` up to `rows_pad` and out-of-bounds taps are zero.
template <typename T, typename Src, typename F>
void Im2ColTile(const ConvGeometry& g, const Src* x, int n, int64_t p0,
                int rows, int rows_pad, T* dst, F transform) {
  const int cin = g.is.c;
  std::fill(dst, dst + static_cast<size_t>(rows_pad) * g.k, T{0});
  for (int r = 0; r < rows; ++r) {
    const int64_t p = p0 + r;
    const int oh = static_cast<int>(p / g.os.w);
    const int ow = static_cast<int>(p % g.os.w);
    T* row = dst + static_cast<size_t>(r) * g.k;
    for (int kh = 0; kh < g.fs.n; ++kh) {
      const int ih = oh * g.stride_h - g.wh.pad_before + kh;
      if (ih < 0 || ih >= g.is.h) continue;
      for (int kw = 0; kw < g.fs.h; ++kw) {
        const int iw = ow * g.stride_w - g.ww.pad_before + kw;
        if (iw < 0 || iw >= g.is.w) continue;
        const Src* src =
            x + ((static_cast<int64_t>(n) * g.is.h + ih) * g.is.w + iw) * cin;
        T* out = row + (kh * g.fs.h + kw) * cin;
        for (int c = 0; c < cin; ++c) out[c] = transform(src[c]);
      }
    }
  }
}

// Lane vectors of kNR elements; keeps the kMR x kNR accumulator block in
// registers.
typedef float VecF __attribute__((vector_size(kNR * sizeof(float))));
typedef int32_t VecI __attribute__((vector_size(kNR * sizeof(int32_t))));
typedef int16_t VecS __attribute__((vector_size(kNR * sizeof(int16_t))));

template <typename V, typename T>
inline V LoadLanes(const T* p) {
  V v;
  __builtin_memcpy(&v, p, sizeof(V));
  return v;
}

// `a` holds kMR rows interleaved per k step; `b` one packed panel.
inline void MicroKernel(int kc, const float* __restrict a,
                        const float* __restrict b, float* __restrict c,
                        int ldc) {
  VecF acc[kMR] = {};
  for (int k = 0; k < kc; ++k) {
    const VecF bk = LoadLanes<VecF>(b + k * kNR);
    const float* ak = a + k * kMR;
    for (int i = 0; i < kMR; ++i) acc[i] += ak[i] * bk;
  }
  for (int i = 0; i < kMR; ++i) {
    VecF out = LoadLanes<VecF>(c + i * ldc) + acc[i];
    __builtin_memcpy(c + i * ldc, &out, sizeof(VecF));
  }
}

inline void MicroKernel(int kc, const int16_t* __restrict a,
                        const int16_t* __restrict b, int32_t* __restrict c,
                        int ldc) {
  VecI acc[kMR] = {};
  for (int k = 0; k < kc; ++k) {
    const VecI bk =
        __builtin_convertvector(LoadLanes<VecS>(b + k * kNR), VecI);
    const int16_t* ak = a + k * kMR;
    for (int i = 0; i < kMR; ++i) acc[i] += static_cast<int32_t>(ak[i]) * bk;
  }
  for (int i = 0; i < kMR; ++i) {
    VecI out = LoadLanes<VecI>(c + i * ldc) + acc[i];
    __builtin_memcpy(c + i * ldc, &out, sizeof(VecI));
  }
}

// Reorders a row-major (rows_pad x k) block into kMR-row slivers, each laid
// out k-major, so the micro-kernel reads A contiguously.
template <typename T>
void PackSlivers(const T* src, int rows_pad, int k, T* dst) {
  for (int i0 = 0; i0 < rows_pad; i0 += kMR) {
    T* out = dst + static_cast<size_t>(i0) * k;
    for (int kk = 0; kk < k; ++kk) {
      for (int i = 0; i < kMR; ++i) {
        out[kk * kMR + i] = src[static_cast<size_t>(i0 + i) * k + kk];
      }
    }
  }
}

template <typename T>
std::vector<T>& ScratchA() {
  thread_local std::vector<T> buf;
  return buf;
}

template <typename T>
std::vector<T>& ScratchPacked() {
  thread_local std::vector<T> buf;
  return buf;
}

template <typename Acc>
std::vector<Acc>& ScratchC() {
  thread_local std::vector<Acc> buf;
  return buf;
}

// Runs the blocked GEMM over all (batch, tile) tasks; `epilogue(n, p, acc)`
// receives one finished output row of cout accumulators.
template <typename T, typename Acc, typename Src, typename F, typename E>
void ConvGemm(const TaskRunner& runner, const ConvGeometry& g, const Src* x,
              const std::vector<T>& packed, F transform, E epilogue) {
  const int64_t tiles_per_image = (g.m + kTileRows - 1) / kTileRows;
  const int64_t tasks = tiles_per_image * g.os.n;
  const int panels = g.n_pad / kNR;
  runner.Run(tasks, [&](int64_t task) {
    const int n = static_cast<int>(task / tiles_per_image);
    const int64_t p0 = (task % tiles_per_image) * kTileRows;
    const int rows = static_cast<int>(std::min<int64_t>(kTileRows, g.m - p0));
    const int rows_pad = RoundUp(rows, kMR);
    auto& a = ScratchA<T>();
    a.resize(static_cast<size_t>(rows_pad) * g.k);
    auto& c = ScratchC<Acc>();
    c.assign(static_cast<size_t>(rows_pad) * g.n_pad, Acc{0});
    Im2ColTile<T>(g, x, n, p0, rows, rows_pad, a.data(), transform);
    auto& ap = ScratchPacked<T>();
    ap.resize(a.size());
    PackSlivers(a.data(), rows_pad, g.k, ap.data());
    for (int k0 = 0; k0 < g.k; k0 += kKC) {
      const int kc = std::min(kKC, g.k - k0);
      for (int pj = 0; pj < panels; ++pj) {
        const T* bp = packed.data() + (static_cast<size_t>(pj) * g.k + k0) * kNR;
        for (int i0 = 0; i0 < rows_pad; i0 += kMR) {
          MicroKernel(kc,
                              ap.data() + static_cast<size_t>(i0) * g.k +
                                  static_cast<size_t>(k0) * kMR,
                              bp,
                              c.data() + static_cast<size_t>(i0) * g.n_pad +
                                  pj * kNR,
                              g.n_pad);
        }
      }
    }
    for (int r = 0; r < rows; ++r) {
      epilogue(n, p0 + r, c.data() + static_cast<size_t>(r) * g.n_pad);
    }
  });
}

}  // namespace

OptimizedKernels::OptimizedKernels(int threads) : runner_(threads) {}

Tensor OptimizedKernels::Conv2D(const Tensor& input, const Tensor& filter,
                                const Bias& bias, const ConvParams& params,
                                const std::optional<QuantParams>&) const {
  if (input.dtype() != DType::kFloat32 || filter.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kConv2D, DType::kInt8Q);
  }
  const auto b = detail::FloatBias(bias, "conv2d");
  const Shape os = Conv2DOutputShape(input.shape(), filter.shape(), params);
  CheckBiasLength(b.size(), filter.shape().c, "conv2d");
  const ConvGeometry g = MakeGeometry(input.shape(), filter.shape(), os, params);
  const auto packed = PackPanels<float>(filter.floats().data(), g.k, os.c,
                                        [](float v) { return v; });
  Tensor out = Tensor::Zeros(os);
  float* y = out.mutable_floats().data();
  const bool relu = params.activation == Activation::kRelu;
  ConvGemm<float, float>(
      runner_, g, input.floats().data(), packed, [](float v) { return v; },
      [&](int n, int64_t p, const float* acc) {
        float* dst = y + (static_cast<int64_t>(n) * g.m + p) * os.c;
        for (int oc = 0; oc < os.c; ++oc) {
          const float v = acc[oc] + b[oc];
          dst[oc] = (relu && !(v > 0.0f)) ? 0.0f : v;
        }
      });
  return out;
}

Tensor OptimizedKernels::DepthwiseConv2D(const Tensor& input,
                                         const Tensor& filter, const Bias& bias,
                                         const ConvParams& params,
                                         const std::optional<QuantParams>&) const {
  if (input.dtype() != DType::kFloat32 || filter.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kDepthwiseConv2D, DType::kInt8Q);
  }
  const auto b = detail::FloatBias(bias, "depthwise_conv2d");
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = DepthwiseOutputShape(is, fs, params);
  CheckBiasLength(b.size(), is.c, "depthwise_conv2d");
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");
  const float* x = input.floats().data();
  const float* w = filter.floats().data();
  Tensor out = Tensor::Zeros(os);
  float* y = out.mutable_floats().data();
  const int c_n = is.c;
  const bool relu = params.activation == Activation::kRelu;
  runner_.Run(static_cast<int64_t>(os.n) * os.h, [&](int64_t task) {
    const int n = static_cast<int>(task / os.h);
    const int oh = static_cast<int>(task % os.h);
    std::vector<float> acc(c_n);
    for (int ow = 0; ow < os.w; ++ow) {
      std::fill(acc.begin(), acc.end(), 0.0f);
      for (int kh = 0; kh < fs.n; ++kh) {
        const int ih = oh * params.stride_h - wh.pad_before + kh;
        if (ih < 0 || ih >= is.h) continue;
        for (int kw = 0; kw < fs.h; ++kw) {
          const int iw = ow * params.stride_w - ww.pad_before + kw;
          if (iw < 0 || iw >= is.w) continue;
          const float* src = x + ((static_cast<int64_t>(n) * is.h + ih) * is.w + iw) * c_n;
          const float* wk = w + (kh * fs.h + kw) * c_n;
          for (int c = 0; c < c_n; ++c) acc[c] += src[c] * wk[c];
        }
      }
      float* dst = y + ((static_cast<int64_t>(n) * os.h + oh) * os.w + ow) * c_n;
      for (int c = 0; c < c_n; ++c) {
        const float v = acc[c] + b[c];
        dst[c] = (relu && !(v > 0.0f)) ? 0.0f : v;
      }
    }
  });
  return out;
}

Tensor OptimizedKernels::FullyConnected(const Tensor& input,
                                        const Tensor& filter, const Bias& bias,
                                        Activation activation,
                                        const std::optional<QuantParams>&) const {
  if (input.dtype() != DType::kFloat32 || filter.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kFullyConnected, DType::kInt8Q);
  }
  const auto b = detail::FloatBias(bias, "fully_connected");
  const Shape os = FullyConnectedOutputShape(input.shape(), filter.shape());
  const int rows = filter.shape().w;
  const int cols = filter.shape().c;
  CheckBiasLength(b.size(), cols, "fully_connected");
  constexpr int kChunk = 256;
  const int chunks = (cols + kChunk - 1) / kChunk;
  const float* x = input.floats().data();
  const float* w = filter.floats().data();
  Tensor out = Tensor::Zeros(os);
  float* y = out.mutable_floats().data();
  const bool relu = activation == Activation::kRelu;
  runner_.Run(static_cast<int64_t>(os.n) * chunks, [&](int64_t task) {
    const int n = static_cast<int>(task / chunks);
    const int j0 = static_cast<int>(task % chunks) * kChunk;
    const int width = std::min(kChunk, cols - j0);
    float acc[kChunk] = {};
    const float* xn = x + static_cast<int64_t>(n) * rows;
    for (int i = 0; i < rows; ++i) {
      const float xi = xn[i];
      const float* wi = w + static_cast<int64_t>(i) * cols + j0;
      for (int j = 0; j < width; ++j) acc[j] += xi * wi[j];
    }
    for (int j = 0; j < width; ++j) {
      const float v = acc[j] + b[j0 + j];
      y[static_cast<int64_t>(n) * cols + j0 + j] =
          (relu && !(v > 0.0f)) ? 0.0f : v;
    }
  });
  return out;
}

Tensor OptimizedKernels::Pool(const Tensor& input,
                              const PoolParams& params) const {
  if (input.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kPool, input.dtype());
  }
  const Shape& is = input.shape();
  const Shape os = PoolOutputShape(is, params);
  const Window1D wh = ComputeWindow(is.h, params.window_h, params.stride_h,
                                    params.padding, "height");
  const Window1D ww = ComputeWindow(is.w, params.window_w, params.stride_w,
                                    params.padding, "width");
  const float* x = input.floats().data();
  Tensor out = Tensor::Zeros(os);
  float* y = out.mutable_floats().data();
  const int c_n = is.c;
  const bool is_max = params.kind == PoolKind::kMax;
  runner_.Run(static_cast<int64_t>(os.n) * os.h, [&](int64_t task) {
    const int n = static_cast<int>(task / os.h);
    const int oh = static_cast<int>(task % os.h);
    std::vector<float> acc(c_n);
    for (int ow = 0; ow < os.w; ++ow) {
      std::fill(acc.begin(), acc.end(),
                is_max ? -std::numeric_limits<float>::infinity() : 0.0f);
      int count = 0;
      for (int kh = 0; kh < params.window_h; ++kh) {
        const int ih = oh * params.stride_h - wh.pad_before + kh;
        if (ih < 0 || ih >= is.h) continue;
        for (int kw = 0; kw < params.window_w; ++kw) {
          const int iw = ow * params.stride_w - ww.pad_before + kw;
          if (iw < 0 || iw >= is.w) continue;
          ++count;
          const float* src =
              x + ((static_cast<int64_t>(n) * is.h + ih) * is.w + iw) * c_n;
          if (is_max) {
            for (int c = 0; c < c_n; ++c) acc[c] = std::max(acc[c], src[c]);
          } else {
            for (int c = 0; c < c_n; ++c) acc[c] += src[c];
          }
        }
      }
      float* dst = y + ((static_cast<int64_t>(n) * os.h + oh) * os.w + ow) * c_n;
      const float inv = static_cast<float>(count);
      for (int c = 0; c < c_n; ++c) dst[c] = is_max ? acc[c] : acc[c] / inv;
    }
  });
  return out;
}

Tensor OptimizedKernels::ResizeBilinear(const Tensor& input, int out_h,
                                        int out_w) const {
  if (input.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kResizeBilinear, input.dtype());
  }
  const Shape& is = input.shape();
  const Shape os = ResizeOutputShape(is, out_h, out_w);
  struct Tap {
    int lo, hi;
    float frac;
  };
  auto taps = [](int in, int out) {
    std::vector<Tap> t(out);
    const double scale = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
      double src = std::max(0.0, (i + 0.5) * scale - 0.5);
      int lo = std::min(static_cast<int>(std::floor(src)), in - 1);
      t[i] = {lo, std::min(lo + 1, in - 1), static_cast<float>(src - lo)};
    }
    return t;
  };
  const auto ty = taps(is.h, out_h);
  const auto tx = taps(is.w, out_w);
  const float* x = input.floats().data();
  Tensor out = Tensor::Zeros(os);
  float* y = out.mutable_floats().data();
  const int c_n = is.c;
  runner_.Run(static_cast<int64_t>(os.n) * os.h, [&](int64_t task) {
    const int n = static_cast<int>(task / os.h);
    const int oh = static_cast<int>(task % os.h);
    const Tap& sy = ty[oh];
    const float* r0 = x + (static_cast<int64_t>(n) * is.h + sy.lo) * is.w * c_n;
    const float* r1 = x + (static_cast<int64_t>(n) * is.h + sy.hi) * is.w * c_n;
    for (int ow = 0; ow < os.w; ++ow) {
      const Tap& sx = tx[ow];
      const float* p00 = r0 + static_cast<int64_t>(sx.lo) * c_n;
      const float* p01 = r0 + static_cast<int64_t>(sx.hi) * c_n;
      const float* p10 = r1 + static_cast<int64_t>(sx.lo) * c_n;
      const float* p11 = r1 + static_cast<int64_t>(sx.hi) * c_n;
      float* dst = y + ((static_cast<int64_t>(n) * os.h + oh) * os.w + ow) * c_n;
      for (int c = 0; c < c_n; ++c) {
        const float top = (1.0f - sx.frac) * p00[c] + sx.frac * p01[c];
        const float bottom = (1.0f - sx.frac) * p10[c] + sx.frac * p11[c];
        dst[c] = (1.0f - sy.frac) * top + sy.frac * bottom;
      }
    }
  });
  return out;
}

Tensor OptimizedKernels::Add(const Tensor& a, const Tensor& b,
                             const std::optional<QuantParams>&) const {
  if (a.dtype() != DType::kFloat32 || b.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kAdd, DType::kInt8Q);
  }
  return ref::Add(a, b);
}

Tensor OptimizedKernels::Relu(const Tensor& input) const {
  if (input.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kRelu, input.dtype());
  }
  return ref::Relu(input);
}

Tensor OptimizedKernels::Concat(std::span<const Tensor* const> inputs,
                                const std::optional<QuantParams>&) const {
  for (const Tensor* t : inputs) {
    if (t->dtype() != DType::kFloat32) Unsupported(OpKind::kConcat, t->dtype());
  }
  return ref::Concat(inputs);
}

Tensor OptimizedKernels::Softmax(const Tensor& input,
                                 const std::optional<QuantParams>&) const {
  if (input.dtype() != DType::kFloat32) {
    Unsupported(OpKind::kSoftmax, input.dtype());
  }
  return ref::Softmax(input);
}

// ---------------------------------------------------------------------------
// Int8.

QuantizedKernels::QuantizedKernels(int threads) : runner_(threads) {}

Tensor QuantizedKernels::Conv2D(const Tensor& input, const Tensor& filter,
                                const Bias& bias, const ConvParams& params,
                                const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() != DType::kInt8Q || filter.dtype() != DType::kInt8Q) {
    Unsupported(OpKind::kConv2D, DType::kFloat32);
  }
  const QuantParams& oq = RequireOutQParams(out_qp, OpKind::kConv2D);
  const auto b = detail::Int32Bias(bias, "conv2d");
  const Shape os = Conv2DOutputShape(input.shape(), filter.shape(), params);
  CheckBiasLength(b.size(), filter.shape().c, "conv2d");
  CheckQuantizedReduction(filter.shape().n, filter.shape().h,
                          filter.shape().w);
  const ConvGeometry g = MakeGeometry(input.shape(), filter.shape(), os, params);
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const auto packed = PackPanels<int16_t>(
      filter.int8s().data(), g.k, os.c,
      [w_zp](int8_t v) { return static_cast<int16_t>(v - w_zp); });
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), oq);
  const int32_t floor_q =
      params.activation == Activation::kRelu ? oq.zero_point : -128;
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  ConvGemm<int16_t, int32_t>(
      runner_, g, input.int8s().data(), packed,
      [in_zp](int8_t v) { return static_cast<int16_t>(v - in_zp); },
      [&](int n, int64_t p, const int32_t* acc) {
        int8_t* dst = y.data() + (static_cast<int64_t>(n) * g.m + p) * os.c;
        for (int oc = 0; oc < os.c; ++oc) {
          dst[oc] = Requantize(acc[oc], b[oc], multiplier, oq.zero_point,
                               floor_q);
        }
      });
  return Tensor::FromInt8(os, std::move(y), oq);
}

Tensor QuantizedKernels::DepthwiseConv2D(
    const Tensor& input, const Tensor& filter, const Bias& bias,
    const ConvParams& params, const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() != DType::kInt8Q || filter.dtype() != DType::kInt8Q) {
    Unsupported(OpKind::kDepthwiseConv2D, DType::kFloat32);
  }
  const QuantParams& oq = RequireOutQParams(out_qp, OpKind::kDepthwiseConv2D);
  const auto b = detail::Int32Bias(bias, "depthwise_conv2d");
  const Shape& is = input.shape();
  const Shape& fs = filter.shape();
  const Shape os = DepthwiseOutputShape(is, fs, params);
  CheckBiasLength(b.size(), is.c, "depthwise_conv2d");
  CheckQuantizedReduction(fs.n, fs.h, 1);
  const Window1D wh =
      ComputeWindow(is.h, fs.n, params.stride_h, params.padding, "height");
  const Window1D ww =
      ComputeWindow(is.w, fs.h, params.stride_w, params.padding, "width");
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), oq);
  const int32_t floor_q =
      params.activation == Activation::kRelu ? oq.zero_point : -128;
  const int c_n = is.c;
  std::vector<int16_t> wz(static_cast<size_t>(fs.n) * fs.h * c_n);
  const auto w8 = filter.int8s();
  for (size_t i = 0; i < wz.size(); ++i) wz[i] = static_cast<int16_t>(w8[i] - w_zp);
  const int8_t* x = input.int8s().data();
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  runner_.Run(static_cast<int64_t>(os.n) * os.h, [&](int64_t task) {
    const int n = static_cast<int>(task / os.h);
    const int oh = static_cast<int>(task % os.h);
    std::vector<int32_t> acc(c_n);
    for (int ow = 0; ow < os.w; ++ow) {
      std::fill(acc.begin(), acc.end(), 0);
      for (int kh = 0; kh < fs.n; ++kh) {
        const int ih = oh * params.stride_h - wh.pad_before + kh;
        if (ih < 0 || ih >= is.h) continue;
        for (int kw = 0; kw < fs.h; ++kw) {
          const int iw = ow * params.stride_w - ww.pad_before + kw;
          if (iw < 0 || iw >= is.w) continue;
          const int8_t* src =
              x + ((static_cast<int64_t>(n) * is.h + ih) * is.w + iw) * c_n;
          const int16_t* wk = wz.data() + (kh * fs.h + kw) * c_n;
          for (int c = 0; c < c_n; ++c) {
            acc[c] += (static_cast<int32_t>(src[c]) - in_zp) * wk[c];
          }
        }
      }
      int8_t* dst =
          y.data() + ((static_cast<int64_t>(n) * os.h + oh) * os.w + ow) * c_n;
      for (int c = 0; c < c_n; ++c) {
        dst[c] = Requantize(acc[c], b[c], multiplier, oq.zero_point, floor_q);
      }
    }
  });
  return Tensor::FromInt8(os, std::move(y), oq);
}

Tensor QuantizedKernels::FullyConnected(
    const Tensor& input, const Tensor& filter, const Bias& bias,
    Activation activation, const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() != DType::kInt8Q || filter.dtype() != DType::kInt8Q) {
    Unsupported(OpKind::kFullyConnected, DType::kFloat32);
  }
  const QuantParams& oq = RequireOutQParams(out_qp, OpKind::kFullyConnected);
  const auto b = detail::Int32Bias(bias, "fully_connected");
  const Shape os = FullyConnectedOutputShape(input.shape(), filter.shape());
  const int rows = filter.shape().w;
  const int cols = filter.shape().c;
  CheckBiasLength(b.size(), cols, "fully_connected");
  CheckQuantizedReduction(1, 1, rows);
  const int32_t in_zp = input.qparams().zero_point;
  const int32_t w_zp = filter.qparams().zero_point;
  const double multiplier =
      detail::RealMultiplier(input.qparams(), filter.qparams(), oq);
  const int32_t floor_q =
      activation == Activation::kRelu ? oq.zero_point : -128;
  constexpr int kChunk = 256;
  const int chunks = (cols + kChunk - 1) / kChunk;
  const int8_t* x = input.int8s().data();
  const int8_t* w = filter.int8s().data();
  std::vector<int8_t> y(static_cast<size_t>(os.elements()));
  runner_.Run(static_cast<int64_t>(os.n) * chunks, [&](int64_t task) {
    const int n = static_cast<int>(task / chunks);
    const int j0 = static_cast<int>(task % chunks) * kChunk;
    const int width = std::min(kChunk, cols - j0);
    int32_t acc[kChunk] = {};
    const int8_t* xn = x + static_cast<int64_t>(n) * rows;
    for (int i = 0; i < rows; ++i) {
      const int32_t xi = static_cast<int32_t>(xn[i]) - in_zp;
      const int8_t* wi = w + static_cast<int64_t>(i) * cols + j0;
      for (int j = 0; j < width; ++j) {
        acc[j] += xi * (static_cast<int32_t>(wi[j]) - w_zp);
      }
    }
    for (int j = 0; j < width; ++j) {
      y[static_cast<int64_t>(n) * cols + j0 + j] =
          Requantize(acc[j], b[j0 + j], multiplier, oq.zero_point, floor_q);
    }
  });
  return Tensor::FromInt8(os, std::move(y), oq);
}

Tensor QuantizedKernels::Pool(const Tensor& input,
                              const PoolParams& params) const {
  if (input.dtype() != DType::kInt8Q) {
    Unsupported(OpKind::kPool, input.dtype());
  }
  return ref::Pool(input, params);
}

Tensor QuantizedKernels::Softmax(const Tensor& input,
                                 const std::optional<QuantParams>& out_qp) const {
  if (input.dtype() != DType::kInt8Q) {
    Unsupported(OpKind::kSoftmax, input.dtype());
  }
  return ref::QuantizedSoftmax(input,
                               RequireOutQParams(out_qp, OpKind::kSoftmax));
}

}  // namespace infer_bench
