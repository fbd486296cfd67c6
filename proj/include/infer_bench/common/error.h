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

#ifndef INFER_BENCH_COMMON_ERROR_H_
#define INFER_BENCH_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace infer_bench {

enum class ErrorKind {
  kInvalidArgument,
  kShapeMismatch,
  kDanglingReference,
  kCycle,
  kUnusedNode,
  kMissingWeight,
  kDTypeMismatch,
  kUnsupportedOp,
  kUnknownBackend,
  kDuplicateBackend,
  kInvariantViolation,
  kParse,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure surfaced by the library. `subject()` names the offending
// entity: a dimension, node id, weight name, backend id, field or line.
class BenchError : public std::runtime_error {
 public:
  BenchError(ErrorKind kind, std::string subject, const std::string& message);

  ErrorKind kind() const { return kind_; }
  const std::string& subject() const { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

}  // namespace infer_bench

#endif  // INFER_BENCH_COMMON_ERROR_H_
