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

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/splitmix.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/kernels/quantization.h"
#include "infer_bench/kernels/reference.h"

namespace infer_bench {
namespace {

Tensor Random(Shape s, uint64_t seed, float lo = -1.0f, float hi = 1.0f) {
  SplitMix64 rng(seed);
  std::vector<float> v(static_cast<size_t>(s.elements()));
  for (float& x : v) x = static_cast<float>(rng.NextUniform(lo, hi));
  return Tensor::FromFloats(s, std::move(v));
}

std::vector<float> RandomVec(size_t n, uint64_t seed) {
  Tensor t = Random(Shape{1, 1, 1, static_cast<int>(n)}, seed);
  return std::vector<float>(t.floats().begin(), t.floats().end());
}

double MaxRelDiff(const Tensor& a, const Tensor& b) {
  EXPECT_EQ(a.shape(), b.shape());
  double diff = 0.0;
  double peak = 0.0;
  for (int64_t i = 0; i < a.elements(); ++i) {
    diff = std::max(diff, std::abs(double{a.floats()[i]} - b.floats()[i]));
    peak = std::max(peak, std::abs(double{a.floats()[i]}));
  }
  return peak > 0 ? diff / peak : diff;
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const BenchError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no BenchError thrown";
  return ErrorKind::kInvariantViolation;
}

TEST(ComputeWindowTest, SameAndValid) {
  EXPECT_EQ(ComputeWindow(224, 3, 2, Padding::kSame, "h").out, 112);
  EXPECT_EQ(ComputeWindow(224, 3, 2, Padding::kSame, "h").pad_before, 0);
  EXPECT_EQ(ComputeWindow(7, 3, 1, Padding::kSame, "h").pad_before, 1);
  EXPECT_EQ(ComputeWindow(299, 3, 2, Padding::kValid, "h").out, 149);
  EXPECT_EQ(ComputeWindow(5, 5, 3, Padding::kValid, "h").out, 1);
  EXPECT_EQ(KindOf([] { ComputeWindow(3, 5, 1, Padding::kValid, "h"); }),
            ErrorKind::kShapeMismatch);
}

TEST(ReferenceTest, ConvHandComputed) {
  // 3x3 single-channel input, 2x2 all-ones filter, valid: window sums.
  Tensor x = Tensor::FromFloats({1, 3, 3, 1}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  Tensor w = Tensor::FromFloats({2, 2, 1, 1}, {1, 1, 1, 1});
  std::vector<float> b = {0.5f};
  ConvParams p{1, 1, Padding::kValid, Activation::kNone};
  Tensor y = ref::Conv2D(x, w, b, p);
  ASSERT_EQ(y.shape(), (Shape{1, 2, 2, 1}));
  EXPECT_EQ(std::vector<float>(y.floats().begin(), y.floats().end()),
            (std::vector<float>{12.5f, 16.5f, 24.5f, 28.5f}));
}

TEST(ReferenceTest, ResizeHalfPixel) {
  Tensor x = Tensor::FromFloats({1, 2, 2, 1}, {0, 1, 2, 3});
  Tensor y = ref::ResizeBilinear(x, 3, 3);
  const std::vector<float> want = {0, 0.5f, 1, 1, 1.5f, 2, 2, 2.5f, 3};
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(y.floats()[i], want[i], 1e-6);
}

TEST(ReferenceTest, SoftmaxSumsToOne) {
  Tensor x = Random({2, 3, 3, 10}, 5, -20.0f, 20.0f);
  Tensor y = ref::Softmax(x);
  for (int64_t p = 0; p < 18; ++p) {
    double s = 0;
    for (int c = 0; c < 10; ++c) s += y.floats()[p * 10 + c];
    EXPECT_NEAR(s, 1.0, 1e-5);
  }
}

TEST(ReferenceTest, AvgPoolCountsInBoundsOnly) {
  Tensor x = Tensor::FromFloats({1, 2, 2, 1}, {1, 2, 3, 4});
  PoolParams p{PoolKind::kAvg, 3, 3, 1, 1, Padding::kSame};
  Tensor y = ref::Pool(x, p);
  EXPECT_FLOAT_EQ(y.floats()[0], 2.5f);
}

TEST(ReferenceTest, ShapeErrorsNameDimension) {
  Tensor x = Random({1, 4, 4, 3}, 1);
  Tensor w = Random({3, 3, 4, 8}, 2);
  try {
    ref::Conv2D(x, w, std::vector<float>(8), ConvParams{});
    FAIL();
  } catch (const BenchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShapeMismatch);
    EXPECT_NE(std::string(e.what()).find("channel"), std::string::npos);
  }
}

struct ConvCase {
  Shape in;
  int k;
  int cout;
  int stride;
  Padding pad;
  Activation act;
};

class OptimizedConvTest : public ::testing::TestWithParam<ConvCase> {};

TEST_P(OptimizedConvTest, MatchesReference) {
  const ConvCase& c = GetParam();
  Tensor x = Random(c.in, 11);
  Tensor w = Random({c.k, c.k, c.in.c, c.cout}, 12);
  std::vector<float> b = RandomVec(c.cout, 13);
  ConvParams p{c.stride, c.stride, c.pad, c.act};
  Tensor want = ref::Conv2D(x, w, b, p);
  OptimizedKernels opt;
  Tensor got = opt.Conv2D(x, w, b, p, std::nullopt);
  EXPECT_LT(MaxRelDiff(want, got), 1e-5);
}

INSTANTIATE_TEST_SUITE_P(
    Shapes, OptimizedConvTest,
    ::testing::Values(ConvCase{{1, 7, 9, 3}, 3, 5, 1, Padding::kSame,
                               Activation::kNone},
                      ConvCase{{2, 17, 13, 20}, 3, 33, 2, Padding::kSame,
                               Activation::kRelu},
                      ConvCase{{1, 11, 11, 300}, 1, 17, 1, Padding::kValid,
                               Activation::kNone},
                      ConvCase{{1, 20, 20, 3}, 9, 64, 1, Padding::kSame,
                               Activation::kRelu},
                      ConvCase{{1, 9, 9, 8}, 5, 16, 5, Padding::kSame,
                               Activation::kNone}));

TEST(OptimizedTest, DepthwiseFcPoolResizeMatchReference) {
  OptimizedKernels opt;
  Tensor x = Random({2, 13, 15, 24}, 21);
  Tensor dw = Random({3, 3, 24, 1}, 22);
  std::vector<float> b24 = RandomVec(24, 23);
  for (int s : {1, 2}) {
    ConvParams p{s, s, Padding::kSame, Activation::kRelu};
    EXPECT_LT(MaxRelDiff(ref::DepthwiseConv2D(x, dw, b24, p),
                         opt.DepthwiseConv2D(x, dw, b24, p, std::nullopt)),
              1e-5);
  }
  Tensor fx = Random({3, 1, 1, 700}, 24);
  Tensor fw = Random({1, 1, 700, 300}, 25);
  std::vector<float> fb = RandomVec(300, 26);
  EXPECT_LT(MaxRelDiff(ref::FullyConnected(fx, fw, fb),
                       opt.FullyConnected(fx, fw, fb, Activation::kNone,
                                          std::nullopt)),
            1e-5);
  for (PoolKind k : {PoolKind::kMax, PoolKind::kAvg}) {
    PoolParams p{k, 3, 3, 2, 2, Padding::kSame};
    EXPECT_EQ(MaxRelDiff(ref::Pool(x, p), opt.Pool(x, p)), 0.0);
  }
  EXPECT_LT(MaxRelDiff(ref::ResizeBilinear(x, 31, 7),
                       opt.ResizeBilinear(x, 31, 7)),
            1e-6);
}

TEST(OptimizedTest, ThreadCountDoesNotChangeResults) {
  Tensor x = Random({1, 40, 40, 32}, 31);
  Tensor w = Random({3, 3, 32, 48}, 32);
  std::vector<float> b = RandomVec(48, 33);
  ConvParams p{1, 1, Padding::kSame, Activation::kNone};
  OptimizedKernels one(1);
  OptimizedKernels four(4);
  Tensor a = one.Conv2D(x, w, b, p, std::nullopt);
  Tensor c = four.Conv2D(x, w, b, p, std::nullopt);
  EXPECT_TRUE(std::equal(a.floats().begin(), a.floats().end(),
                         c.floats().begin()));
}

TEST(OptimizedTest, RejectsInt8) {
  OptimizedKernels opt;
  Tensor q = Quantize(Random({1, 4, 4, 2}, 3), QuantParams{0.01f, 0});
  EXPECT_EQ(KindOf([&] { opt.Relu(q); }), ErrorKind::kUnsupportedOp);
  EXPECT_EQ(KindOf([&] { opt.Pool(q, PoolParams{}); }),
            ErrorKind::kUnsupportedOp);
}

TEST(QuantizationTest, ChooseParamsCoversZero) {
  QuantParams qp = ChooseQuantParams(0.0f, 1.0f);
  EXPECT_FLOAT_EQ(qp.scale, 1.0f / 255.0f);
  EXPECT_EQ(qp.zero_point, -128);
  EXPECT_EQ(QuantizeValue(0.0f, qp), -128);
  EXPECT_EQ(QuantizeValue(1.0f, qp), 127);
  QuantParams sym = ChooseQuantParams(-1.0f, 1.0f);
  EXPECT_NEAR(DequantizeValue(QuantizeValue(0.0f, sym), sym), 0.0f,
              sym.scale / 2);
}

TEST(QuantizationTest, RoundingHalfAwayFromZero) {
  EXPECT_EQ(RoundDiv(5, 2), 3);
  EXPECT_EQ(RoundDiv(-5, 2), -3);
  EXPECT_EQ(RoundDiv(4, 3), 1);
  EXPECT_EQ(Requantize(3, 0, 0.5, 0, -128), 2);
  EXPECT_EQ(Requantize(-3, 0, 0.5, 0, -128), -2);
  EXPECT_EQ(Requantize(100000, 0, 1.0, 0, -128), 127);
  EXPECT_EQ(Requantize(-5, 0, 1.0, 3, 3), 3);
}

TEST(QuantizationTest, RoundTripWithinHalfStep) {
  Tensor x = Random({1, 5, 5, 4}, 41, -3.0f, 2.0f);
  QuantParams qp = ChooseQuantParams(-3.0f, 2.0f);
  Tensor back = Dequantize(Quantize(x, qp));
  for (int64_t i = 0; i < x.elements(); ++i) {
    EXPECT_LE(std::abs(x.floats()[i] - back.floats()[i]), qp.scale * 0.5f + 1e-6f);
  }
}

TEST(QuantizationTest, ReductionBound) {
  EXPECT_EQ(kMaxQuantizedReduction, 33025);
  EXPECT_NO_THROW(CheckQuantizedReduction(3, 3, 1024));
  EXPECT_EQ(KindOf([] { CheckQuantizedReduction(11, 1, 1); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { CheckQuantizedReduction(9, 9, 1024); }),
            ErrorKind::kInvalidArgument);
}

struct QuantizedFixture {
  Tensor x;
  Tensor w;
  Tensor dw;
  std::vector<int32_t> b;
  std::vector<int32_t> bdw;
  QuantParams out{0.05f, 3};
};

QuantizedFixture MakeQuantized() {
  QuantizedFixture f;
  f.x = Quantize(Random({2, 14, 11, 16}, 51, 0.0f, 1.0f),
                 ChooseQuantParams(0.0f, 1.0f));
  f.w = Quantize(Random({3, 3, 16, 40}, 52, -0.1f, 0.1f),
                 ChooseQuantParams(-0.1f, 0.1f));
  f.dw = Quantize(Random({3, 3, 16, 1}, 53, -0.1f, 0.1f),
                  ChooseQuantParams(-0.1f, 0.1f));
  f.b = QuantizeBias(RandomVec(40, 54), f.x.qparams().scale,
                     f.w.qparams().scale);
  f.bdw = QuantizeBias(RandomVec(16, 55), f.x.qparams().scale,
                       f.dw.qparams().scale);
  return f;
}

bool SameInt8(const Tensor& a, const Tensor& b) {
  return a.shape() == b.shape() && a.qparams() == b.qparams() &&
         std::equal(a.int8s().begin(), a.int8s().end(), b.int8s().begin());
}

TEST(QuantizedTest, BitExactWithReference) {
  QuantizedFixture f = MakeQuantized();
  QuantizedKernels qk(2);
  for (Activation act : {Activation::kNone, Activation::kRelu}) {
    for (int s : {1, 2}) {
      ConvParams p{s, s, Padding::kSame, act};
      EXPECT_TRUE(SameInt8(ref::QConv2D(f.x, f.w, f.b, p, f.out),
                           qk.Conv2D(f.x, f.w, f.b, p, f.out)));
      EXPECT_TRUE(SameInt8(ref::QDepthwiseConv2D(f.x, f.dw, f.bdw, p, f.out),
                           qk.DepthwiseConv2D(f.x, f.dw, f.bdw, p, f.out)));
    }
  }
  Tensor fx = Quantize(Random({2, 1, 1, 64}, 56, 0.0f, 2.0f),
                       ChooseQuantParams(0.0f, 2.0f));
  Tensor fw = Quantize(Random({1, 1, 64, 30}, 57), ChooseQuantParams(-1, 1));
  std::vector<int32_t> fb(30, 7);
  EXPECT_TRUE(SameInt8(
      ref::QFullyConnected(fx, fw, fb, Activation::kNone, f.out),
      qk.FullyConnected(fx, fw, fb, Activation::kNone, f.out)));
  ReferenceKernels rk;
  PoolParams avg{PoolKind::kAvg, 7, 7, 1, 1, Padding::kValid};
  Tensor big = Quantize(Random({1, 7, 7, 5}, 58), ChooseQuantParams(-1, 1));
  EXPECT_TRUE(SameInt8(rk.Pool(big, avg), qk.Pool(big, avg)));
  QuantParams sm{1.0f / 256.0f, -128};
  EXPECT_TRUE(SameInt8(rk.Softmax(fx, sm), qk.Softmax(fx, sm)));
}

TEST(QuantizedTest, TracksFloatResult) {
  QuantizedFixture f = MakeQuantized();
  ConvParams p{1, 1, Padding::kSame, Activation::kNone};
  Tensor fb = Dequantize(f.w);
  std::vector<float> bias(40);
  for (int i = 0; i < 40; ++i) {
    bias[i] = static_cast<float>(f.b[i] * double{f.x.qparams().scale} *
                                 f.w.qparams().scale);
  }
  Tensor want = ref::Conv2D(Dequantize(f.x), fb, bias, p);
  Tensor got = Dequantize(ref::QConv2D(f.x, f.w, f.b, p, f.out));
  for (int64_t i = 0; i < want.elements(); ++i) {
    const float clamped = std::clamp(want.floats()[i], (-128 - 3) * 0.05f,
                                     (127 - 3) * 0.05f);
    EXPECT_NEAR(got.floats()[i], clamped, 0.05f * 0.5f + 1e-5f);
  }
}

TEST(QuantizedTest, RejectsFloatAndMissingOutParams) {
  QuantizedKernels qk;
  QuantizedFixture f = MakeQuantized();
  Tensor x = Random({1, 4, 4, 2}, 3);
  EXPECT_EQ(KindOf([&] { qk.Pool(x, PoolParams{}); }),
            ErrorKind::kUnsupportedOp);
  EXPECT_EQ(KindOf([&] { qk.Relu(f.x); }), ErrorKind::kUnsupportedOp);
  EXPECT_EQ(KindOf([&] {
              qk.Conv2D(f.x, f.w, f.b, ConvParams{}, std::nullopt);
            }),
            ErrorKind::kDTypeMismatch);
}

TEST(ReferenceKernelsTest, Int8AddAndConcatRequantize) {
  ReferenceKernels rk;
  QuantParams qa{0.02f, -10};
  Tensor a = Quantize(Random({1, 2, 2, 3}, 61), qa);
  Tensor b = Quantize(Random({1, 2, 2, 3}, 62), qa);
  QuantParams out{0.04f, 0};
  Tensor s = rk.Add(a, b, out);
  Tensor fa = Dequantize(a);
  Tensor fb2 = Dequantize(b);
  for (int i = 0; i < 12; ++i) {
    EXPECT_EQ(s.int8s()[i],
              QuantizeValue(fa.floats()[i] + fb2.floats()[i], out));
  }
  const Tensor* parts[] = {&a, &b};
  Tensor c = rk.Concat(parts, out);
  EXPECT_EQ(c.shape(), (Shape{1, 2, 2, 6}));
}

}  // namespace
}  // namespace infer_bench
