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
#include <map>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/splitmix.h"
#include "infer_bench/graph/analyzers.h"
#include "infer_bench/graph/builder.h"
#include "infer_bench/graph/execute.h"
#include "infer_bench/graph/quantize.h"
#include "infer_bench/graph/serialize.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/kernels/quantization.h"
#include "infer_bench/kernels/reference.h"

namespace infer_bench {
namespace {

Tensor RandomInput(Shape s, uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<float> v(static_cast<size_t>(s.elements()));
  for (float& x : v) x = rng.NextUniform(0.0, 1.0);
  return Tensor::FromFloats(s, std::move(v));
}

ErrorKind KindOf(const std::function<void()>& fn, std::string* subject) {
  try {
    fn();
  } catch (const BenchError& e) {
    if (subject) *subject = e.subject();
    return e.kind();
  }
  ADD_FAILURE() << "no BenchError thrown";
  return ErrorKind::kInvariantViolation;
}

GraphSpec ReluSpec(Shape s) {
  GraphSpec spec;
  spec.name = "relu";
  spec.input_shape = s;
  OperatorNode n;
  n.id = "r";
  n.kind = OpKind::kRelu;
  n.inputs = {"input"};
  spec.nodes.push_back(n);
  spec.output_id = "r";
  return spec;
}

GraphSpec Srcnn(int side, bool with_weights = true) {
  GraphBuilder b("srcnn", Shape{1, side, side, 3}, 7, with_weights);
  std::string x = b.Conv(b.input(), 9, 9, 64);
  x = b.Conv(x, 5, 5, 32);
  x = b.Conv(x, 5, 5, 3, 1, Padding::kSame, Activation::kNone);
  return b.Finish(x);
}

TEST(ValidateTest, SingleRelu) {
  Graph g = Validate(ReluSpec({1, 4, 5, 3}));
  EXPECT_EQ(g.output_shape(0), (Shape{1, 4, 5, 3}));
  EXPECT_EQ(CountParams(g), 0);
  EXPECT_EQ(CountMacs(g), 0);
}

TEST(ValidateTest, MissingWeightNamesWeight) {
  GraphBuilder b("g", Shape{1, 4, 4, 1}, 1);
  std::string c = b.Conv(b.input(), 3, 3, 1);
  GraphSpec spec = b.Finish(c);
  spec.nodes[0].weight_refs[0] = "nope";
  std::string subject;
  EXPECT_EQ(KindOf([&] { Validate(spec); }, &subject),
            ErrorKind::kMissingWeight);
  EXPECT_EQ(subject, "nope");
  // Structure-only validation does not consult weights.
  EXPECT_NO_THROW(ValidateStructure(spec));
}

TEST(ValidateTest, DistinctErrorsNameTheNode) {
  std::string subject;
  GraphSpec dangling = ReluSpec({1, 2, 2, 1});
  dangling.nodes[0].inputs = {"ghost"};
  EXPECT_EQ(KindOf([&] { Validate(dangling); }, &subject),
            ErrorKind::kDanglingReference);
  EXPECT_EQ(subject, "r");

  GraphSpec cycle = ReluSpec({1, 2, 2, 1});
  cycle.nodes[0].inputs = {"r"};
  EXPECT_EQ(KindOf([&] { Validate(cycle); }, &subject), ErrorKind::kCycle);
  EXPECT_EQ(subject, "r");

  GraphSpec unused = ReluSpec({1, 2, 2, 1});
  OperatorNode extra = unused.nodes[0];
  extra.id = "orphan";
  unused.nodes.insert(unused.nodes.begin(), extra);
  EXPECT_EQ(KindOf([&] { Validate(unused); }, &subject),
            ErrorKind::kUnusedNode);
  EXPECT_EQ(subject, "orphan");

  GraphSpec mismatch = ReluSpec({1, 2, 2, 1});
  OperatorNode resize;
  resize.id = "small";
  resize.kind = OpKind::kResizeBilinear;
  resize.inputs = {"input"};
  resize.attrs.out_h = resize.attrs.out_w = 1;
  OperatorNode add;
  add.id = "sum";
  add.kind = OpKind::kAdd;
  add.inputs = {"small", "r"};
  mismatch.nodes.push_back(resize);
  mismatch.nodes.push_back(add);
  mismatch.output_id = "sum";
  EXPECT_EQ(KindOf([&] { Validate(mismatch); }, &subject),
            ErrorKind::kShapeMismatch);
  EXPECT_EQ(subject, "sum");
}

TEST(ValidateTest, RejectsBadAttributesAndDTypes) {
  GraphSpec spec = ReluSpec({1, 2, 2, 1});
  spec.nodes[0].attrs.activation = Activation::kRelu;
  EXPECT_EQ(KindOf([&] { Validate(spec); }, nullptr),
            ErrorKind::kInvalidArgument);

  GraphBuilder b("g", Shape{1, 4, 4, 2}, 1);
  std::string c = b.Conv(b.input(), 3, 3, 2);
  GraphSpec w = b.Finish(c);
  w.dtype = DType::kInt8Q;
  w.input_qp = QuantParams{0.1f, 0};
  w.nodes[0].attrs.out_qp = QuantParams{0.1f, 0};
  std::string subject;
  EXPECT_EQ(KindOf([&] { Validate(w); }, &subject),
            ErrorKind::kDTypeMismatch);
  EXPECT_EQ(subject, c + "/weights");
}

TEST(ValidateTest, SrcnnShapes) {
  Graph g = Validate(Srcnn(300));
  ASSERT_EQ(g.nodes().size(), 3u);
  EXPECT_EQ(g.output_shape(0), (Shape{1, 300, 300, 64}));
  EXPECT_EQ(g.output_shape(1), (Shape{1, 300, 300, 32}));
  EXPECT_EQ(g.output_shape(2), (Shape{1, 300, 300, 3}));
  EXPECT_EQ(CountParams(g), 69251);
  EXPECT_EQ(g.spec().weights.ParameterCount(), 69251);
}

TEST(ExecuteTest, ReluOnly) {
  Graph g = Validate(ReluSpec({1, 1, 1, 2}));
  Tensor y = Execute(g, Tensor::FromFloats({1, 1, 1, 2}, {-1.0f, 2.0f}),
                     ReferenceKernels());
  EXPECT_EQ(y.floats()[0], 0.0f);
  EXPECT_EQ(y.floats()[1], 2.0f);
}

TEST(ExecuteTest, ChainedIdentityConvs) {
  GraphSpec spec;
  spec.name = "id";
  spec.input_shape = {1, 3, 3, 2};
  for (std::string id : {"c1", "c2"}) {
    OperatorNode n;
    n.id = id;
    n.kind = OpKind::kConv2D;
    n.inputs = {id == "c1" ? "input" : "c1"};
    n.attrs.kernel_h = n.attrs.kernel_w = 1;
    n.attrs.out_channels = 2;
    n.weight_refs = {id + "/w", id + "/b"};
    spec.nodes.push_back(n);
    spec.weights.AddTensor(id + "/w",
                           Tensor::FromFloats({1, 1, 2, 2}, {1, 0, 0, 1}));
    spec.weights.AddBias(id + "/b", std::vector<float>{0, 0});
  }
  spec.output_id = "c2";
  Graph g = Validate(std::move(spec));
  Tensor x = RandomInput({1, 3, 3, 2}, 3);
  Tensor y = Execute(g, x, ReferenceKernels());
  EXPECT_TRUE(std::equal(x.floats().begin(), x.floats().end(),
                         y.floats().begin()));
}

TEST(ExecuteTest, RejectsWrongInputAndStructureOnlyGraphs) {
  Graph g = Validate(ReluSpec({1, 2, 2, 1}));
  EXPECT_EQ(KindOf([&] { Execute(g, Tensor::Zeros({1, 3, 2, 1}),
                                 ReferenceKernels()); },
                   nullptr),
            ErrorKind::kShapeMismatch);
  Graph s = ValidateStructure(Srcnn(16, false));
  EXPECT_EQ(KindOf([&] { Execute(s, Tensor::Zeros({1, 16, 16, 3}),
                                 ReferenceKernels()); },
                   nullptr),
            ErrorKind::kMissingWeight);
}

TEST(ExecuteTest, KernelErrorsCarryNodeId) {
  GraphBuilder b("g", Shape{1, 4, 4, 2}, 1);
  std::string r = b.Resize(b.input(), 8, 8);
  Graph g = Validate(b.Finish(r));
  QuantizedKernels q;
  std::string subject;
  EXPECT_EQ(KindOf([&] { Execute(g, Tensor::Zeros({1, 4, 4, 2}), q); },
                   &subject),
            ErrorKind::kUnsupportedOp);
  EXPECT_EQ(subject, r);
}

// Random DAGs of conv/relu/add/pool/resize/concat; Execute must equal calling
// the reference kernels by hand in node order.
TEST(ExecuteTest, RandomGraphsMatchManualComposition) {
  for (uint64_t trial = 0; trial < 25; ++trial) {
    SplitMix64 rng(100 + trial);
    GraphBuilder b("rand", Shape{1, 8, 8, 4}, trial);
    std::vector<std::string> pool = {b.input()};
    const int steps = 4 + static_cast<int>(rng.Next() % 5);
    for (int s = 0; s < steps; ++s) {
      const std::string a = pool[rng.Next() % pool.size()];
      const Shape sa = b.shape(a);
      std::string made;
      switch (rng.Next() % 5) {
        case 0:
          made = b.Conv(a, 3, 3, 4);
          break;
        case 1:
          made = b.Relu(a);
          break;
        case 2: {
          std::string other = b.Conv(a, 1, 1, sa.c, 1, Padding::kSame,
                                     Activation::kNone);
          made = b.Add(a, other);
          break;
        }
        case 3:
          made = b.Resize(b.Pool(a, PoolKind::kMax, 2, 2, Padding::kSame),
                          sa.h, sa.w);
          break;
        default:
          made = b.Conv(b.Concat({a, a}), 1, 1, 4);
          break;
      }
      pool.push_back(made);
    }
    GraphSpec spec = b.Finish(pool.back());
    // Drop nodes that do not feed the output, as Validate demands.
    {
      std::vector<bool> keep(spec.nodes.size(), false);
      std::vector<std::string> need = {spec.output_id};
      for (int i = static_cast<int>(spec.nodes.size()) - 1; i >= 0; --i) {
        if (std::find(need.begin(), need.end(), spec.nodes[i].id) ==
            need.end()) {
          continue;
        }
        keep[i] = true;
        for (const auto& in : spec.nodes[i].inputs) need.push_back(in);
      }
      std::vector<OperatorNode> kept;
      for (size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) kept.push_back(spec.nodes[i]);
      }
      spec.nodes = kept;
    }
    Graph g = Validate(spec);
    Tensor x = RandomInput({1, 8, 8, 4}, trial);
    Tensor got = Execute(g, x, ReferenceKernels());

    std::map<std::string, Tensor> vals = {{"input", x}};
    for (const OperatorNode& n : g.nodes()) {
      const NodeAttrs& a = n.attrs;
      const ConvParams cp{a.stride_h, a.stride_w, a.padding, a.activation};
      const Tensor& in0 = vals.at(n.inputs[0]);
      const auto& ws = g.spec().weights;
      switch (n.kind) {
        case OpKind::kConv2D:
          vals[n.id] = ref::Conv2D(
              in0, *ws.FindTensor(n.weight_refs[0]),
              std::get<std::vector<float>>(*ws.FindBias(n.weight_refs[1])),
              cp);
          break;
        case OpKind::kRelu:
          vals[n.id] = ref::Relu(in0);
          break;
        case OpKind::kAdd:
          vals[n.id] = ref::Add(in0, vals.at(n.inputs[1]));
          break;
        case OpKind::kPool:
          vals[n.id] = ref::Pool(in0, PoolParams{a.pool_kind, a.window_h,
                                                 a.window_w, a.stride_h,
                                                 a.stride_w, a.padding});
          break;
        case OpKind::kResizeBilinear:
          vals[n.id] = ref::ResizeBilinear(in0, a.out_h, a.out_w);
          break;
        case OpKind::kConcat: {
          std::vector<const Tensor*> parts;
          for (const auto& in : n.inputs) parts.push_back(&vals.at(in));
          vals[n.id] = ref::Concat(parts);
          break;
        }
        default:
          FAIL() << "unexpected op";
      }
    }
    const Tensor& want = vals.at(g.spec().output_id);
    ASSERT_EQ(want.shape(), got.shape());
    EXPECT_TRUE(std::equal(want.floats().begin(), want.floats().end(),
                           got.floats().begin()))
        << "trial " << trial;
  }
}

TEST(AnalyzerTest, ClosedForms) {
  GraphBuilder b("g", Shape{1, 5, 5, 1}, 1);
  std::string c = b.Conv(b.input(), 3, 3, 1);
  Graph g = Validate(b.Finish(c));
  EXPECT_EQ(CountParams(g), 10);
  EXPECT_EQ(CountMacs(g), 225);

  const int64_t n = 4 * 6 * 7;
  Graph relu = Validate(ReluSpec({1, 4, 6, 7}));
  EXPECT_EQ(PeakActivationBytes(relu), 8 * n);

  GraphSpec empty = ReluSpec({1, 1, 1, 1});
  EXPECT_EQ(CountParams(Validate(empty)), 0);
}

TEST(AnalyzerTest, SrcnnPeakMemory) {
  Graph g = ValidateStructure(Srcnn(300, false));
  // Largest live set: conv1 output (64 ch) plus conv2 output (32 ch).
  EXPECT_EQ(PeakActivationBytes(g), (64 + 32) * 4 * 300 * 300);
  EXPECT_GE(PeakActivationBytes(g), 23040000);
  EXPECT_EQ(CountParams(g), 69251);
}

TEST(AnalyzerTest, SrcnnPeakIsQuadraticInSide) {
  // Least-squares fit of peak = c * L^2 over L in {100..500}.
  std::vector<double> side;
  std::vector<double> peak;
  for (int l = 100; l <= 500; l += 100) {
    side.push_back(l);
    peak.push_back(static_cast<double>(
        PeakActivationBytes(ValidateStructure(Srcnn(l, false)))));
  }
  double num = 0;
  double den = 0;
  for (size_t i = 0; i < side.size(); ++i) {
    num += peak[i] * side[i] * side[i];
    den += std::pow(side[i], 4);
  }
  const double c = num / den;
  for (size_t i = 0; i < side.size(); ++i) {
    EXPECT_LT(std::abs(peak[i] - c * side[i] * side[i]) / peak[i], 0.01);
  }
}

TEST(AnalyzerTest, MacsLinearInAreaAndPure) {
  auto build = [](int side) {
    GraphBuilder b("g", Shape{1, side, side, 3}, 1, false);
    std::string x = b.Conv(b.input(), 3, 3, 16);
    x = b.Conv(x, 5, 5, 8);
    return ValidateStructure(b.Finish(x));
  };
  Graph a = build(16);
  Graph c = build(32);
  EXPECT_EQ(CountMacs(c), 4 * CountMacs(a));
  EXPECT_EQ(CountMacs(a), CountMacs(a));
  EXPECT_EQ(PeakActivationBytes(a), PeakActivationBytes(a));
}

TEST(AnalyzerTest, ObservedLiveBytesMatchPrediction) {
  GraphBuilder b("g", Shape{1, 12, 12, 3}, 9);
  std::string x = b.Conv(b.input(), 3, 3, 8);
  std::string y = b.Conv(x, 3, 3, 8);
  std::string s = b.Add(x, y);
  std::string p = b.Pool(s, PoolKind::kAvg, 2, 2);
  Graph g = Validate(b.Finish(b.Softmax(p)));
  int64_t observed = 0;
  Execute(g, RandomInput({1, 12, 12, 3}, 1), ReferenceKernels(),
          [&](const NodeEvent& e) {
            observed = std::max(observed, e.live_bytes);
          });
  EXPECT_EQ(observed, PeakActivationBytes(g));
}

TEST(SerializeTest, RoundTrip) {
  GraphSpec spec = Srcnn(16);
  std::stringstream buf;
  SerializeWeights(spec.weights, buf);
  WeightStore back = DeserializeWeights(buf);
  EXPECT_EQ(back.ParameterCount(), spec.weights.ParameterCount());
  for (const auto& [name, t] : spec.weights.tensors()) {
    const Tensor* u = back.FindTensor(name);
    ASSERT_NE(u, nullptr);
    EXPECT_TRUE(std::equal(t.floats().begin(), t.floats().end(),
                           u->floats().begin()));
  }
  std::istringstream bad("IBW2....");
  EXPECT_EQ(KindOf([&] { DeserializeWeights(bad); }, nullptr),
            ErrorKind::kParse);
  std::string blob = SerializeWeightsToString(spec.weights);
  std::istringstream cut(blob.substr(0, blob.size() / 2));
  EXPECT_EQ(KindOf([&] { DeserializeWeights(cut); }, nullptr),
            ErrorKind::kParse);
}

TEST(QuantizeTest, SmallConvNetTracksFloat) {
  GraphBuilder b("small", Shape{1, 16, 16, 3}, 21);
  std::string x = b.Conv(b.input(), 3, 3, 16, 2);
  x = b.Depthwise(x, 3);
  x = b.Conv(x, 1, 1, 8, 1, Padding::kSame, Activation::kNone);
  Graph fg = Validate(b.Finish(x));
  Tensor in = RandomInput({1, 16, 16, 3}, 5);
  const QuantParams in_qp = ChooseQuantParams(0.0f, 1.0f);
  Graph qg = Validate(QuantizeGraph(fg, in, OptimizedKernels(), in_qp));
  EXPECT_EQ(qg.dtype(), DType::kInt8Q);
  EXPECT_EQ(CountParams(qg), CountParams(fg));
  Tensor want = Execute(fg, in, ReferenceKernels());
  Tensor got_q = Execute(qg, Quantize(in, in_qp), ReferenceKernels());
  Tensor got = Dequantize(got_q);
  const float out_scale = got_q.qparams().scale;
  double worst = 0;
  for (int64_t i = 0; i < want.elements(); ++i) {
    worst = std::max(worst, double{std::abs(want.floats()[i] - got.floats()[i])});
  }
  EXPECT_LE(worst, 2.0 * out_scale);
  Tensor fast = Execute(qg, Quantize(in, in_qp), QuantizedKernels());
  EXPECT_TRUE(std::equal(fast.int8s().begin(), fast.int8s().end(),
                         got_q.int8s().begin()));
}

TEST(QuantizeTest, Int8BlobIsAQuarterOfFloat) {
  GraphBuilder b("q", Shape{1, 8, 8, 32}, 3);
  std::string x = b.Conv(b.input(), 3, 3, 256);
  x = b.Conv(x, 1, 1, 256);
  Graph fg = Validate(b.Finish(x));
  Graph qg = Validate(QuantizeGraph(fg, RandomInput({1, 8, 8, 32}, 1),
                                    ReferenceKernels(),
                                    ChooseQuantParams(0.0f, 1.0f)));
  const double f = static_cast<double>(
      SerializeWeightsToString(fg.spec().weights).size());
  const double q = static_cast<double>(
      SerializeWeightsToString(qg.spec().weights).size());
  EXPECT_NEAR(f / 4.0 / q, 1.0, 0.02);
}

}  // namespace
}  // namespace infer_bench
