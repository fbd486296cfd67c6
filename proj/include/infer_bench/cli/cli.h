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

#ifndef INFER_BENCH_CLI_CLI_H_
#define INFER_BENCH_CLI_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infer_bench/runner/suite.h"

namespace infer_bench {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;

inline constexpr char kProfileEnvVar[] = "INFER_BENCH_PROFILE";

struct RunConfig {
  std::string backend = kAutoBackend;
  int threads = 1;
  double scale = 1.0;
  uint64_t seed = kDefaultSeed;
  int64_t mem_cap_bytes = kDefaultMemCapBytes;
  double budget_scale = 1.0;
  std::string out = "suite.jsonl";
  std::string profile;
  std::string device_name;
  std::string soc_name;
  double ram_gb = 0.0;
  std::vector<int> tests;
  // Scripted per-image costs; empty means the steady clock.
  std::vector<double> sim_cost_ms;
  bool probe_execute = true;
};

// Throws kInvalidArgument on a bad field.
void ValidateRunConfig(const RunConfig& config);

// Host facts used for the suite header.
std::string HostName();
std::string CpuModel();
double HostRamGb();

// Parses argv and runs one subcommand; returns an exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace infer_bench

#endif  // INFER_BENCH_CLI_CLI_H_
