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

// Writes the canonical workload spec files, one per test, with explicit
// layer lists.
#include <filesystem>
#include <iostream>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/zoo/spec_io.h"

int main(int argc, char** argv) {
  namespace ib = infer_bench;
  const std::filesystem::path dir = argc > 1 ? argv[1] : "workloads/v1";
  try {
    std::filesystem::create_directories(dir);
    for (int t = 1; t <= ib::kNumTests; ++t) {
      const auto path = dir / fmt::format("test{}.json", t);
      ib::SaveSpec(ib::WithLayers(ib::DefaultSpec(t)), path.string());
      std::cout << path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
