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

#include "infer_bench/runner/clock.h"

#include <algorithm>

#include "infer_bench/common/error.h"

namespace infer_bench {

double SteadyClock::NowMs() {
  const auto d = std::chrono::steady_clock::now() - origin_;
  return std::chrono::duration<double, std::milli>(d).count();
}

SimulatedClock::SimulatedClock(std::vector<double> costs_ms)
    : costs_ms_(std::move(costs_ms)) {
  if (costs_ms_.empty()) {
    throw BenchError(ErrorKind::kInvalidArgument, "costs_ms",
                     "simulated clock needs at least one image cost");
  }
  for (double c : costs_ms_) {
    if (!(c >= 0.0)) {
      throw BenchError(ErrorKind::kInvalidArgument, "costs_ms",
                       "image costs must be non-negative");
    }
  }
}

void SimulatedClock::OnImageEnd(int64_t index) {
  const size_t i = std::min(static_cast<size_t>(index), costs_ms_.size() - 1);
  now_ms_ += costs_ms_[i];
}

}  // namespace infer_bench
