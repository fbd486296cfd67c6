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

#ifndef INFER_BENCH_DISPATCH_DISPATCH_H_
#define INFER_BENCH_DISPATCH_DISPATCH_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infer_bench/graph/graph.h"

namespace infer_bench {

inline constexpr char kReferenceBackend[] = "reference";
inline constexpr char kOptimizedBackend[] = "optimized";
inline constexpr char kQuantizedBackend[] = "quantized";
inline constexpr char kAutoBackend[] = "auto";

using OpSupport = std::pair<OpKind, DType>;

struct BackendCapability {
  std::string backend_id;
  std::set<OpSupport> supported_ops;
  std::string description;

  bool Supports(OpKind kind, DType dtype) const {
    return supported_ops.count({kind, dtype}) > 0;
  }
};

// Every (op, dtype) pair; the reference backend must declare exactly this.
std::set<OpSupport> AllOpSupport();

enum class DispatchReason { kAllOpsSupported, kFallbackUnsupportedOp,
                            kForcedByFlag };

std::string DispatchReasonName(DispatchReason reason);
DispatchReason ParseDispatchReason(const std::string& name);

struct DispatchDecision {
  std::string chosen_backend_id;
  std::string preferred_backend_id;
  DispatchReason reason = DispatchReason::kAllOpsSupported;
  // Set for kFallbackUnsupportedOp: the first node the preferred backend
  // cannot run.
  std::string node_id;
  std::optional<OpKind> op_kind;

  std::string ToString() const;
};

// Backends and their declared capabilities. Configure at startup, then
// treat as read-only; lookups and selection are safe from many threads.
class BackendRegistry {
 public:
  // Throws kDuplicateBackend on a repeated id, and kInvariantViolation if the
  // reference backend does not declare total coverage.
  void Register(BackendCapability capability,
                std::shared_ptr<const BackendKernels> kernels);

  std::vector<std::string> List() const;
  bool Contains(const std::string& id) const;
  const BackendCapability& capability(const std::string& id) const;
  const BackendKernels& kernels(const std::string& id) const;

  // Whole-graph rule: `preferred` when it supports every node's
  // (op, dtype), otherwise the reference backend with the first unsupported
  // node recorded.
  DispatchDecision Select(const Graph& graph,
                          const std::string& preferred) const;

  // The reference backend, recorded as forced (e.g. CPU-only tests).
  DispatchDecision ForceReference(const std::string& preferred) const;

 private:
  struct Entry {
    BackendCapability capability;
    std::shared_ptr<const BackendKernels> kernels;
  };
  const Entry& Find(const std::string& id) const;

  std::map<std::string, Entry> entries_;
};

// Registry with the three built-in backends. `threads` sizes the optimized
// and quantized task arenas.
BackendRegistry MakeDefaultRegistry(int threads = 1);

// "auto" resolves to quantized for int8 graphs and optimized otherwise; any
// other name is returned unchanged.
std::string ResolvePreferred(const std::string& requested, DType dtype);

struct Equivalence {
  // Largest |a - b| in real units (int8 outputs are dequantized).
  double max_abs = 0.0;
  // max_abs divided by the largest |a|.
  double max_rel = 0.0;
  // Largest distance in quantization steps; int8 outputs only.
  int max_quanta = 0;
};

// Runs `graph` under both kernel sets on the same input and compares.
Equivalence EquivalenceCheck(const Graph& graph, const Tensor& input,
                             const BackendKernels& a, const BackendKernels& b);

// Comparison of two outputs with identical shape and dtype.
Equivalence CompareTensors(const Tensor& a, const Tensor& b);

}  // namespace infer_bench

#endif  // INFER_BENCH_DISPATCH_DISPATCH_H_
