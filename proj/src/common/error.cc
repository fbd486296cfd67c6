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

#include "infer_bench/common/error.h"

namespace infer_bench {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "invalid_argument";
    case ErrorKind::kShapeMismatch:
      return "shape_mismatch";
    case ErrorKind::kDanglingReference:
      return "dangling_reference";
    case ErrorKind::kCycle:
      return "cycle";
    case ErrorKind::kUnusedNode:
      return "unused_node";
    case ErrorKind::kMissingWeight:
      return "missing_weight";
    case ErrorKind::kDTypeMismatch:
      return "dtype_mismatch";
    case ErrorKind::kUnsupportedOp:
      return "unsupported_op";
    case ErrorKind::kUnknownBackend:
      return "unknown_backend";
    case ErrorKind::kDuplicateBackend:
      return "duplicate_backend";
    case ErrorKind::kInvariantViolation:
      return "invariant_violation";
    case ErrorKind::kParse:
      return "parse";
    case ErrorKind::kIo:
      return "io";
  }
  return "unknown";
}

BenchError::BenchError(ErrorKind kind, std::string subject,
                       const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind),
      subject_(std::move(subject)) {}

}  // namespace infer_bench
