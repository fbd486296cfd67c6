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

#include "infer_bench/zoo/workload.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/splitmix.h"
#include "infer_bench/graph/quantize.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/kernels/quantization.h"
#include "infer_bench/zoo/architectures.h"

namespace infer_bench {

namespace {

struct Default {
  const char* name;
  const char* arch;
  int h;
  int w;
  double budget_s;  // <= 0: none
  int min_side;
};

// Index = test_id - 1.
constexpr Default kDefaults[kNumTests] = {
    {"MobileNet-V1 (int8)", kMobileNetV1, 224, 224, 25, 32},
    {"Inception-V3", kInceptionV3, 346, 346, 40, 80},
    {"Inception-ResNet-V1", kInceptionResNetV1, 512, 512, 40, 80},
    {"SRCNN 9-5-5", kSrcnn, 300, 300, 30, 16},
    {"VDSR", kVdsr, 192, 192, 40, 16},
    {"SRGAN", kSrgan, 512, 512, 50, 32},
    {"ICNet", kIcnet, 384, 576, 20, 64},
    {"DPED", kDped, 128, 192, 25, 16},
    {"SRCNN memory probe", kSrcnn, 100, 100, 0, 100},
};

const Default& Lookup(int test_id) {
  if (test_id < 1 || test_id > kNumTests) {
    throw BenchError(ErrorKind::kInvalidArgument, "test_id",
                     fmt::format("unknown test id {}", test_id));
  }
  return kDefaults[test_id - 1];
}

bool EligibleByDefault(int test_id) {
  return test_id != 3 && test_id != 6 && test_id != 7;
}

[[noreturn]] void Violation(const std::string& field, const std::string& msg) {
  throw BenchError(ErrorKind::kInvariantViolation, field, msg);
}

// Seed salt for the calibration image of quantized graphs.
constexpr uint64_t kCalibrationSalt = 0xCA1B;

}  // namespace

bool operator==(const WorkloadSpec& a, const WorkloadSpec& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (size_t i = 0; i < a.layers.size(); ++i) {
    const OperatorNode& x = a.layers[i];
    const OperatorNode& y = b.layers[i];
    const NodeAttrs& p = x.attrs;
    const NodeAttrs& q = y.attrs;
    const bool same =
        x.id == y.id && x.kind == y.kind && x.inputs == y.inputs &&
        x.weight_refs == y.weight_refs && p.kernel_h == q.kernel_h &&
        p.kernel_w == q.kernel_w && p.out_channels == q.out_channels &&
        p.stride_h == q.stride_h && p.stride_w == q.stride_w &&
        p.padding == q.padding && p.activation == q.activation &&
        p.pool_kind == q.pool_kind && p.window_h == q.window_h &&
        p.window_w == q.window_w && p.out_h == q.out_h && p.out_w == q.out_w &&
        p.out_qp == q.out_qp;
    if (!same) return false;
  }
  return a.test_id == b.test_id && a.name == b.name &&
         a.architecture == b.architecture && a.input_h == b.input_h &&
         a.input_w == b.input_w && a.quantized == b.quantized &&
         a.accelerator_eligible == b.accelerator_eligible &&
         a.time_budget_s == b.time_budget_s && a.scale == b.scale &&
         a.seed == b.seed;
}

WorkloadSpec DefaultSpec(int test_id, uint64_t seed) {
  const Default& d = Lookup(test_id);
  WorkloadSpec s;
  s.test_id = test_id;
  s.name = d.name;
  s.architecture = d.arch;
  s.input_h = d.h;
  s.input_w = d.w;
  s.quantized = test_id == 1;
  s.accelerator_eligible = EligibleByDefault(test_id);
  if (d.budget_s > 0) s.time_budget_s = d.budget_s;
  s.scale = 1.0;
  s.seed = seed;
  return s;
}

int MinResolution(int test_id) { return Lookup(test_id).min_side; }

WorkloadSpec ScaledSpec(int test_id, double scale, uint64_t seed) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw BenchError(ErrorKind::kInvalidArgument, "scale",
                     fmt::format("scale must be in (0, 1], got {}", scale));
  }
  WorkloadSpec s = DefaultSpec(test_id, seed);
  s.scale = scale;
  if (scale == 1.0) return s;
  if (test_id != kMemoryProbeTest) {
    const Default& d = Lookup(test_id);
    auto side = [&](int full) {
      return static_cast<int>(std::lround(full * scale / 8.0)) * 8;
    };
    const int min_h = d.min_side;
    const int min_w = d.min_side * d.w / d.h;
    s.input_h = std::max(side(d.h), min_h);
    s.input_w = std::max(side(d.w), min_w);
  }
  if (s.time_budget_s) *s.time_budget_s *= scale;
  return s;
}

void ValidateWorkloadSpec(const WorkloadSpec& spec) {
  const Default& d = Lookup(spec.test_id);
  if (spec.architecture != d.arch) {
    Violation("architecture",
              fmt::format("test {} uses architecture '{}', not '{}'",
                          spec.test_id, d.arch, spec.architecture));
  }
  if (spec.quantized != (spec.test_id == 1)) {
    Violation("quantized", fmt::format("quantized must be {} for test {}",
                                       spec.test_id == 1, spec.test_id));
  }
  if (spec.accelerator_eligible != EligibleByDefault(spec.test_id)) {
    Violation("accelerator_eligible",
              fmt::format("accelerator_eligible must be {} for test {}",
                          EligibleByDefault(spec.test_id), spec.test_id));
  }
  if (!(spec.scale > 0.0 && spec.scale <= 1.0)) {
    Violation("scale", fmt::format("scale must be in (0, 1], got {}",
                                   spec.scale));
  }
  if (spec.test_id == kMemoryProbeTest) {
    if (spec.time_budget_s) {
      Violation("time_budget_s", "the memory probe has no time budget");
    }
  } else if (!spec.time_budget_s || !(*spec.time_budget_s > 0.0)) {
    Violation("time_budget_s",
              fmt::format("test {} needs a positive time budget",
                          spec.test_id));
  }
  if (spec.input_h < d.min_side || spec.input_w < 1) {
    Violation("input_resolution",
              fmt::format("test {} needs a side of at least {} px, got {}x{}",
                          spec.test_id, d.min_side, spec.input_h,
                          spec.input_w));
  }
}

QuantParams ImageInputQParams() { return ChooseQuantParams(0.0f, 1.0f); }

Workload Instantiate(const WorkloadSpec& spec,
                     const InstantiateOptions& options) {
  ValidateWorkloadSpec(spec);
  GraphSpec built = BuildArchitecture(spec.architecture, spec.input_h,
                                      spec.input_w, spec.seed,
                                      options.with_weights);
  if (!spec.layers.empty()) {
    WorkloadSpec a = spec;
    WorkloadSpec b = spec;
    b.layers = built.nodes;
    if (!(a == b)) {
      Violation("layers",
                fmt::format("layers do not match the '{}' builder at {}x{}",
                            spec.architecture, spec.input_h, spec.input_w));
    }
  }
  Graph float_graph = options.with_weights ? Validate(std::move(built))
                                           : ValidateStructure(std::move(built));
  Workload w{spec, float_graph, float_graph};
  if (spec.quantized && options.with_weights) {
    const Tensor calib = GenerateInput(spec, MixSeed(spec.seed,
                                                     kCalibrationSalt));
    w.graph = Validate(QuantizeGraph(float_graph, calib, OptimizedKernels(),
                                     ImageInputQParams()));
  }
  return w;
}

Workload Instantiate(int test_id, double scale, uint64_t seed,
                     const InstantiateOptions& options) {
  return Instantiate(ScaledSpec(test_id, scale, seed), options);
}

Tensor GenerateInput(const WorkloadSpec& spec, uint64_t seed) {
  const Shape s{1, spec.input_h, spec.input_w, 3};
  ValidateShape(s, "input");
  SplitMix64 rng(seed);
  std::vector<float> v(static_cast<size_t>(s.elements()));
  for (float& x : v) x = rng.NextUniform(0.0, 1.0);
  return Tensor::FromFloats(s, std::move(v));
}

Tensor GenerateGraphInput(const Workload& workload, uint64_t seed) {
  Tensor x = GenerateInput(workload.spec, seed);
  if (workload.graph.dtype() == DType::kInt8Q) {
    return Quantize(x, *workload.graph.spec().input_qp);
  }
  return x;
}

}  // namespace infer_bench
