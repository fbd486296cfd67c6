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

#include "infer_bench/dispatch/dispatch.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/graph/execute.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/kernels/quantization.h"
#include "infer_bench/kernels/reference.h"

namespace infer_bench {

std::set<OpSupport> AllOpSupport() {
  std::set<OpSupport> all;
  for (OpKind k : kAllOpKinds) {
    all.insert({k, DType::kFloat32});
    all.insert({k, DType::kInt8Q});
  }
  return all;
}

std::string DispatchReasonName(DispatchReason reason) {
  switch (reason) {
    case DispatchReason::kAllOpsSupported:
      return "all_ops_supported";
    case DispatchReason::kFallbackUnsupportedOp:
      return "fallback_unsupported_op";
    case DispatchReason::kForcedByFlag:
      return "forced_by_flag";
  }
  return "unknown";
}

DispatchReason ParseDispatchReason(const std::string& name) {
  for (auto r : {DispatchReason::kAllOpsSupported,
                 DispatchReason::kFallbackUnsupportedOp,
                 DispatchReason::kForcedByFlag}) {
    if (DispatchReasonName(r) == name) return r;
  }
  throw BenchError(ErrorKind::kParse, name,
                   fmt::format("unknown dispatch reason '{}'", name));
}

std::string DispatchDecision::ToString() const {
  if (reason == DispatchReason::kFallbackUnsupportedOp) {
    return fmt::format("{} (fallback from {}: node '{}' needs {})",
                       chosen_backend_id, preferred_backend_id, node_id,
                       op_kind ? OpKindName(*op_kind) : "?");
  }
  return fmt::format("{} ({})", chosen_backend_id, DispatchReasonName(reason));
}

void BackendRegistry::Register(BackendCapability capability,
                               std::shared_ptr<const BackendKernels> kernels) {
  const std::string id = capability.backend_id;
  if (id.empty() || !kernels) {
    throw BenchError(ErrorKind::kInvalidArgument, id,
                     "backend needs an id and kernels");
  }
  if (entries_.count(id) > 0) {
    throw BenchError(ErrorKind::kDuplicateBackend, id,
                     fmt::format("backend '{}' is already registered", id));
  }
  if (id == kReferenceBackend && capability.supported_ops != AllOpSupport()) {
    throw BenchError(ErrorKind::kInvariantViolation, id,
                     "the reference backend must support every op in both "
                     "dtypes");
  }
  entries_.emplace(id, Entry{std::move(capability), std::move(kernels)});
}

std::vector<std::string> BackendRegistry::List() const {
  std::vector<std::string> ids;
  for (const auto& [id, e] : entries_) ids.push_back(id);
  return ids;
}

bool BackendRegistry::Contains(const std::string& id) const {
  return entries_.count(id) > 0;
}

const BackendRegistry::Entry& BackendRegistry::Find(
    const std::string& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw BenchError(ErrorKind::kUnknownBackend, id,
                     fmt::format("unknown backend '{}'", id));
  }
  return it->second;
}

const BackendCapability& BackendRegistry::capability(
    const std::string& id) const {
  return Find(id).capability;
}

const BackendKernels& BackendRegistry::kernels(const std::string& id) const {
  return *Find(id).kernels;
}

DispatchDecision BackendRegistry::Select(const Graph& graph,
                                         const std::string& preferred) const {
  const BackendCapability& cap = capability(preferred);
  Find(kReferenceBackend);
  DispatchDecision d;
  d.preferred_backend_id = preferred;
  for (const OperatorNode& node : graph.nodes()) {
    if (!cap.Supports(node.kind, graph.dtype())) {
      d.chosen_backend_id = kReferenceBackend;
      d.reason = DispatchReason::kFallbackUnsupportedOp;
      d.node_id = node.id;
      d.op_kind = node.kind;
      return d;
    }
  }
  d.chosen_backend_id = preferred;
  d.reason = DispatchReason::kAllOpsSupported;
  return d;
}

DispatchDecision BackendRegistry::ForceReference(
    const std::string& preferred) const {
  Find(kReferenceBackend);
  DispatchDecision d;
  d.preferred_backend_id = preferred;
  d.chosen_backend_id = kReferenceBackend;
  d.reason = DispatchReason::kForcedByFlag;
  return d;
}

BackendRegistry MakeDefaultRegistry(int threads) {
  BackendRegistry r;
  r.Register(BackendCapability{kReferenceBackend, AllOpSupport(),
                               "naive loops, every op in float32 and int8"},
             std::make_shared<ReferenceKernels>());
  std::set<OpSupport> fp;
  for (OpKind k : kAllOpKinds) fp.insert({k, DType::kFloat32});
  r.Register(BackendCapability{kOptimizedBackend, fp,
                               "im2col + blocked GEMM, float32 only"},
             std::make_shared<OptimizedKernels>(threads));
  std::set<OpSupport> q;
  for (OpKind k : {OpKind::kConv2D, OpKind::kDepthwiseConv2D,
                   OpKind::kFullyConnected, OpKind::kPool, OpKind::kSoftmax}) {
    q.insert({k, DType::kInt8Q});
  }
  r.Register(BackendCapability{kQuantizedBackend, q,
                               "int8 kernels for the MobileNet op set"},
             std::make_shared<QuantizedKernels>(threads));
  return r;
}

std::string ResolvePreferred(const std::string& requested, DType dtype) {
  if (requested != kAutoBackend) return requested;
  return dtype == DType::kInt8Q ? kQuantizedBackend : kOptimizedBackend;
}

Equivalence CompareTensors(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape() || a.dtype() != b.dtype()) {
    throw BenchError(ErrorKind::kShapeMismatch, "output",
                     fmt::format("cannot compare {} {} with {} {}",
                                 DTypeName(a.dtype()), a.shape().ToString(),
                                 DTypeName(b.dtype()), b.shape().ToString()));
  }
  Equivalence eq;
  double peak = 0.0;
  if (a.dtype() == DType::kInt8Q) {
    const QuantParams& qa = a.qparams();
    const QuantParams& qb = b.qparams();
    for (int64_t i = 0; i < a.elements(); ++i) {
      const double ra = DequantizeValue(a.int8s()[i], qa);
      const double rb = DequantizeValue(b.int8s()[i], qb);
      eq.max_abs = std::max(eq.max_abs, std::abs(ra - rb));
      peak = std::max(peak, std::abs(ra));
      eq.max_quanta = std::max(
          eq.max_quanta,
          static_cast<int>(std::lround(std::abs(ra - rb) / qa.scale)));
    }
  } else {
    for (int64_t i = 0; i < a.elements(); ++i) {
      const double va = a.floats()[i];
      const double vb = b.floats()[i];
      const double diff = std::abs(va - vb);
      // NaN anywhere is an infinite deviation.
      eq.max_abs = std::isnan(diff) ? INFINITY : std::max(eq.max_abs, diff);
      peak = std::max(peak, std::abs(va));
    }
  }
  eq.max_rel = peak > 0.0 ? eq.max_abs / peak : eq.max_abs;
  return eq;
}

Equivalence EquivalenceCheck(const Graph& graph, const Tensor& input,
                             const BackendKernels& a, const BackendKernels& b) {
  return CompareTensors(Execute(graph, input, a), Execute(graph, input, b));
}

}  // namespace infer_bench
