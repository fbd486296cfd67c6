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

#include "infer_bench/zoo/architectures.h"

#include <algorithm>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/graph/builder.h"

namespace infer_bench {

namespace {

using B = GraphBuilder;
constexpr Activation kLinear = Activation::kNone;
constexpr Padding kSame = Padding::kSame;
constexpr Padding kValid = Padding::kValid;

// 28 layers: a full conv, 13 depthwise-separable pairs and the classifier.
std::string MobileNetV1(B& b) {
  b.SetScope("stem");
  std::string x = b.Conv(b.input(), 3, 3, 32, 2);
  const int plan[13][2] = {{64, 1},  {128, 2}, {128, 1}, {256, 2}, {256, 1},
                           {512, 2}, {512, 1}, {512, 1}, {512, 1}, {512, 1},
                           {512, 1}, {1024, 2}, {1024, 1}};
  for (int i = 0; i < 13; ++i) {
    b.SetScope(fmt::format("sep{}", i + 1));
    x = b.Depthwise(x, 3, plan[i][1]);
    x = b.Conv(x, 1, 1, plan[i][0]);
  }
  b.SetScope("head");
  x = b.GlobalAvgPool(x);
  x = b.FullyConnected(x, 1000);
  return b.Softmax(x);
}

// Inception-V3 in the TF-slim layout, with the auxiliary classifier. The
// auxiliary logits are added to the main logits so every node feeds the
// single output.
std::string InceptionV3(B& b) {
  b.SetScope("stem");
  std::string x = b.Conv(b.input(), 3, 3, 32, 2, kValid);
  x = b.Conv(x, 3, 3, 32, 1, kValid);
  x = b.Conv(x, 3, 3, 64);
  x = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
  x = b.Conv(x, 1, 1, 80, 1, kValid);
  x = b.Conv(x, 3, 3, 192, 1, kValid);
  x = b.Pool(x, PoolKind::kMax, 3, 2, kValid);

  auto block_a = [&](const std::string& in, int pool_proj) {
    std::string b0 = b.Conv(in, 1, 1, 64);
    std::string b1 = b.Conv(b.Conv(in, 1, 1, 48), 5, 5, 64);
    std::string b2 = b.Conv(b.Conv(b.Conv(in, 1, 1, 64), 3, 3, 96), 3, 3, 96);
    std::string b3 =
        b.Conv(b.Pool(in, PoolKind::kAvg, 3, 1, kSame), 1, 1, pool_proj);
    return b.Concat({b0, b1, b2, b3});
  };
  const int proj[3] = {32, 64, 64};
  for (int i = 0; i < 3; ++i) {
    b.SetScope(fmt::format("mixed_5{}", static_cast<char>('b' + i)));
    x = block_a(x, proj[i]);
  }

  b.SetScope("mixed_6a");
  {
    std::string b0 = b.Conv(x, 3, 3, 384, 2, kValid);
    std::string b1 = b.Conv(b.Conv(b.Conv(x, 1, 1, 64), 3, 3, 96), 3, 3, 96, 2,
                            kValid);
    std::string b2 = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
    x = b.Concat({b0, b1, b2});
  }

  auto block_b = [&](const std::string& in, int c7) {
    std::string b0 = b.Conv(in, 1, 1, 192);
    std::string b1 = b.Conv(b.Conv(b.Conv(in, 1, 1, c7), 1, 7, c7), 7, 1, 192);
    std::string y = b.Conv(in, 1, 1, c7);
    y = b.Conv(y, 7, 1, c7);
    y = b.Conv(y, 1, 7, c7);
    y = b.Conv(y, 7, 1, c7);
    std::string b2 = b.Conv(y, 1, 7, 192);
    std::string b3 = b.Conv(b.Pool(in, PoolKind::kAvg, 3, 1, kSame), 1, 1, 192);
    return b.Concat({b0, b1, b2, b3});
  };
  const int c7s[4] = {128, 160, 160, 192};
  for (int i = 0; i < 4; ++i) {
    b.SetScope(fmt::format("mixed_6{}", static_cast<char>('b' + i)));
    x = block_b(x, c7s[i]);
  }

  b.SetScope("aux");
  std::string aux;
  {
    const int k = std::min(5, b.shape(x).h);
    aux = b.Pool(x, PoolKind::kAvg, k, 3, kValid);
    aux = b.Conv(aux, 1, 1, 128);
    aux = b.Conv(aux, 5, 5, 768, 5, kSame);
    aux = b.GlobalAvgPool(aux);
    aux = b.FullyConnected(aux, 1000);
  }

  b.SetScope("mixed_7a");
  {
    std::string b0 = b.Conv(b.Conv(x, 1, 1, 192), 3, 3, 320, 2, kValid);
    std::string y = b.Conv(x, 1, 1, 192);
    y = b.Conv(y, 1, 7, 192);
    y = b.Conv(y, 7, 1, 192);
    std::string b1 = b.Conv(y, 3, 3, 192, 2, kValid);
    std::string b2 = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
    x = b.Concat({b0, b1, b2});
  }

  auto block_c = [&](const std::string& in) {
    std::string b0 = b.Conv(in, 1, 1, 320);
    std::string y = b.Conv(in, 1, 1, 384);
    std::string b1 = b.Concat({b.Conv(y, 1, 3, 384), b.Conv(y, 3, 1, 384)});
    std::string z = b.Conv(b.Conv(in, 1, 1, 448), 3, 3, 384);
    std::string b2 = b.Concat({b.Conv(z, 1, 3, 384), b.Conv(z, 3, 1, 384)});
    std::string b3 = b.Conv(b.Pool(in, PoolKind::kAvg, 3, 1, kSame), 1, 1, 192);
    return b.Concat({b0, b1, b2, b3});
  };
  b.SetScope("mixed_7b");
  x = block_c(x);
  b.SetScope("mixed_7c");
  x = block_c(x);

  b.SetScope("head");
  x = b.GlobalAvgPool(x);
  x = b.FullyConnected(x, 1000);
  x = b.Add(x, aux);
  return b.Softmax(x);
}

// Inception-ResNet-V1 (FaceNet layout): 5 block35, 10 block17 and 6 block8
// (the last one without activation), then a 128-d embedding.
std::string InceptionResNetV1(B& b) {
  b.SetScope("stem");
  std::string x = b.Conv(b.input(), 3, 3, 32, 2, kValid);
  x = b.Conv(x, 3, 3, 32, 1, kValid);
  x = b.Conv(x, 3, 3, 64);
  x = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
  x = b.Conv(x, 1, 1, 80, 1, kValid);
  x = b.Conv(x, 3, 3, 192, 1, kValid);
  x = b.Conv(x, 3, 3, 256, 2, kValid);

  auto residual = [&](const std::string& in, const std::string& mixed,
                      int channels, bool activate) {
    std::string up = b.Conv(mixed, 1, 1, channels, 1, kSame, kLinear);
    std::string sum = b.Add(in, up);
    return activate ? b.Relu(sum) : sum;
  };

  for (int i = 0; i < 5; ++i) {
    b.SetScope(fmt::format("block35_{}", i + 1));
    std::string b0 = b.Conv(x, 1, 1, 32);
    std::string b1 = b.Conv(b.Conv(x, 1, 1, 32), 3, 3, 32);
    std::string b2 = b.Conv(b.Conv(b.Conv(x, 1, 1, 32), 3, 3, 32), 3, 3, 32);
    x = residual(x, b.Concat({b0, b1, b2}), 256, true);
  }

  b.SetScope("mixed_6a");
  {
    std::string b0 = b.Conv(x, 3, 3, 384, 2, kValid);
    std::string b1 = b.Conv(b.Conv(b.Conv(x, 1, 1, 192), 3, 3, 192), 3, 3,
                            256, 2, kValid);
    std::string b2 = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
    x = b.Concat({b0, b1, b2});
  }

  for (int i = 0; i < 10; ++i) {
    b.SetScope(fmt::format("block17_{}", i + 1));
    std::string b0 = b.Conv(x, 1, 1, 128);
    std::string b1 = b.Conv(b.Conv(b.Conv(x, 1, 1, 128), 1, 7, 128), 7, 1, 128);
    x = residual(x, b.Concat({b0, b1}), 896, true);
  }

  b.SetScope("mixed_7a");
  {
    std::string b0 = b.Conv(b.Conv(x, 1, 1, 256), 3, 3, 384, 2, kValid);
    std::string b1 = b.Conv(b.Conv(x, 1, 1, 256), 3, 3, 256, 2, kValid);
    std::string b2 = b.Conv(b.Conv(b.Conv(x, 1, 1, 256), 3, 3, 256), 3, 3,
                            256, 2, kValid);
    std::string b3 = b.Pool(x, PoolKind::kMax, 3, 2, kValid);
    x = b.Concat({b0, b1, b2, b3});
  }

  for (int i = 0; i < 6; ++i) {
    b.SetScope(fmt::format("block8_{}", i + 1));
    std::string b0 = b.Conv(x, 1, 1, 192);
    std::string b1 = b.Conv(b.Conv(b.Conv(x, 1, 1, 192), 1, 3, 192), 3, 1, 192);
    x = residual(x, b.Concat({b0, b1}), 1792, i < 5);
  }

  b.SetScope("head");
  x = b.GlobalAvgPool(x);
  return b.FullyConnected(x, 128);
}

std::string Srcnn(B& b) {
  std::string x = b.Conv(b.input(), 9, 9, 64);
  x = b.Conv(x, 5, 5, 32);
  return b.Conv(x, 5, 5, 3, 1, kSame, kLinear);
}

// 19 3x3 conv layers with a global residual connection.
std::string Vdsr(B& b) {
  std::string x = b.Conv(b.input(), 3, 3, 64);
  for (int i = 0; i < 17; ++i) x = b.Conv(x, 3, 3, 64);
  x = b.Conv(x, 3, 3, 3, 1, kSame, kLinear);
  return b.Add(b.input(), x);
}

// Generator only: the low-resolution input is produced in-graph by a
// bilinear downscale to a quarter of the side.
std::string Srgan(B& b) {
  const Shape in = b.shape(b.input());
  b.SetScope("head");
  std::string x = b.Resize(b.input(), in.h / 4, in.w / 4);
  const std::string x0 = b.Conv(x, 9, 9, 64);
  x = x0;
  for (int i = 0; i < 16; ++i) {
    b.SetScope(fmt::format("res{}", i + 1));
    std::string y = b.Conv(b.Conv(x, 3, 3, 64), 3, 3, 64, 1, kSame, kLinear);
    x = b.Add(x, y);
  }
  b.SetScope("tail");
  x = b.Add(x0, b.Conv(x, 3, 3, 64, 1, kSame, kLinear));
  x = b.Conv(x, 3, 3, 256);
  x = b.Resize(x, in.h / 2, in.w / 2);
  x = b.Conv(x, 9, 9, 3, 1, kSame, kLinear);
  return b.Resize(x, in.h, in.w);
}

// Three-branch pyramid at 1/1, 1/2 and 1/4 input scale with pyramid pooling
// on the coarsest branch and two cascade fusion steps.
std::string Icnet(B& b) {
  const Shape in = b.shape(b.input());
  b.SetScope("high");
  std::string hi = b.Conv(b.input(), 3, 3, 32, 2);
  hi = b.Conv(hi, 3, 3, 32, 2);
  hi = b.Conv(hi, 3, 3, 64, 2);

  b.SetScope("mid");
  std::string mid = b.Resize(b.input(), in.h / 2, in.w / 2);
  mid = b.Conv(mid, 3, 3, 32, 2);
  mid = b.Conv(mid, 3, 3, 64, 2);
  mid = b.Conv(mid, 3, 3, 128, 2);

  b.SetScope("low");
  std::string lo = b.Resize(b.input(), in.h / 4, in.w / 4);
  lo = b.Conv(lo, 3, 3, 32, 2);
  lo = b.Conv(lo, 3, 3, 64, 2);
  lo = b.Conv(lo, 3, 3, 128, 2);
  lo = b.Conv(lo, 3, 3, 256);
  lo = b.Conv(lo, 3, 3, 512);
  lo = b.Conv(lo, 3, 3, 512);
  lo = b.Conv(lo, 3, 3, 448);

  b.SetScope("psp");
  {
    const Shape s = b.shape(lo);
    std::string pooled = b.Resize(b.GlobalAvgPool(lo), s.h, s.w);
    lo = b.Conv(b.Concat({lo, pooled}), 1, 1, 256);
  }

  auto fuse = [&](const std::string& coarse, const std::string& fine,
                  int channels) {
    const Shape s = b.shape(fine);
    std::string up = b.Resize(coarse, s.h, s.w);
    up = b.Conv(up, 3, 3, channels, 1, kSame, kLinear);
    std::string proj = b.Conv(fine, 1, 1, channels, 1, kSame, kLinear);
    return b.Relu(b.Add(up, proj));
  };
  b.SetScope("cff_low_mid");
  std::string y = fuse(lo, mid, 128);
  b.SetScope("cff_mid_high");
  y = fuse(y, hi, 64);

  b.SetScope("classifier");
  y = b.Conv(y, 1, 1, 19, 1, kSame, kLinear);
  return b.Resize(y, in.h, in.w);
}

std::string Dped(B& b) {
  std::string x = b.Conv(b.input(), 9, 9, 64);
  for (int i = 0; i < 4; ++i) {
    b.SetScope(fmt::format("res{}", i + 1));
    std::string y = b.Conv(b.Conv(x, 3, 3, 64), 3, 3, 64);
    x = b.Add(x, y);
  }
  b.SetScope("tail");
  x = b.Conv(x, 3, 3, 64);
  x = b.Conv(x, 3, 3, 64);
  return b.Conv(x, 9, 9, 3, 1, kSame, kLinear);
}

}  // namespace

std::vector<std::string> ArchitectureIds() {
  return {kMobileNetV1, kInceptionV3, kInceptionResNetV1, kSrcnn,
          kVdsr,        kSrgan,       kIcnet,             kDped};
}

GraphSpec BuildArchitecture(const std::string& arch, int h, int w,
                            uint64_t seed, bool with_weights) {
  GraphBuilder b(arch, Shape{1, h, w, 3}, seed, with_weights);
  std::string out;
  if (arch == kMobileNetV1) {
    out = MobileNetV1(b);
  } else if (arch == kInceptionV3) {
    out = InceptionV3(b);
  } else if (arch == kInceptionResNetV1) {
    out = InceptionResNetV1(b);
  } else if (arch == kSrcnn) {
    out = Srcnn(b);
  } else if (arch == kVdsr) {
    out = Vdsr(b);
  } else if (arch == kSrgan) {
    out = Srgan(b);
  } else if (arch == kIcnet) {
    out = Icnet(b);
  } else if (arch == kDped) {
    out = Dped(b);
  } else {
    throw BenchError(ErrorKind::kInvalidArgument, arch,
                     fmt::format("unknown architecture '{}'", arch));
  }
  return b.Finish(out);
}

}  // namespace infer_bench
