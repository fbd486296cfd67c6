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

#ifndef INFER_BENCH_RUNNER_CLOCK_H_
#define INFER_BENCH_RUNNER_CLOCK_H_

#include <chrono>
#include <cstdint>
#include <vector>

namespace infer_bench {

// Monotonic millisecond clock seen by the timing protocol.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double NowMs() = 0;
  // Called after image `index` of a test finishes, before the end time is
  // read.
  virtual void OnImageEnd(int64_t index) { (void)index; }
};

class SteadyClock final : public Clock {
 public:
  SteadyClock() : origin_(std::chrono::steady_clock::now()) {}
  double NowMs() override;

 private:
  std::chrono::steady_clock::time_point origin_;
};

// Time advances only when an image ends: image i of a test costs
// costs_ms[min(i, size - 1)], so a single entry means a constant cost.
class SimulatedClock final : public Clock {
 public:
  explicit SimulatedClock(std::vector<double> costs_ms);
  double NowMs() override { return now_ms_; }
  void OnImageEnd(int64_t index) override;
  void Advance(double ms) { now_ms_ += ms; }

 private:
  std::vector<double> costs_ms_;
  double now_ms_ = 0.0;
};

}  // namespace infer_bench

#endif  // INFER_BENCH_RUNNER_CLOCK_H_
