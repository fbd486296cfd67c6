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

#ifndef INFER_BENCH_COMMON_SPLITMIX_H_
#define INFER_BENCH_COMMON_SPLITMIX_H_

#include <cstdint>

namespace infer_bench {

// SplitMix64 (Steele, Lea, Flood). The exact bit stream is part of the
// reproducibility contract for weights and inputs, so it is spelled out here
// instead of relying on a standard-library engine whose distributions are
// implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double NextUnit() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // Uniform float in [lo, hi), computed in double then narrowed once.
  float NextUniform(double lo, double hi) {
    return static_cast<float>(lo + (hi - lo) * NextUnit());
  }

 private:
  uint64_t state_;
};

// Derives an independent stream seed, e.g. per image index.
inline uint64_t MixSeed(uint64_t seed, uint64_t salt) {
  SplitMix64 mix(seed ^ (salt * 0xd1b54a32d192ed03ULL));
  return mix.Next();
}

}  // namespace infer_bench

#endif  // INFER_BENCH_COMMON_SPLITMIX_H_
