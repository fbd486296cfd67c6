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

#include "infer_bench/cli/cli.h"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"

#include "infer_bench/aggregation/aggregation.h"
#include "infer_bench/common/error.h"
#include "infer_bench/graph/analyzers.h"
#include "infer_bench/graph/quantize.h"
#include "infer_bench/graph/serialize.h"
#include "infer_bench/kernels/optimized.h"
#include "infer_bench/scoring/scoring.h"
#include "infer_bench/zoo/architectures.h"

namespace infer_bench {
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string profile;
};

int ExitCodeFor(const BenchError& e) {
  switch (e.kind()) {
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kUnknownBackend:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

// --profile, then $INFER_BENCH_PROFILE, then the shipped default.
std::string ResolveProfilePath(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kProfileEnvVar); env && *env) return env;
  if (fs::exists("profiles/default.json")) return "profiles/default.json";
  return INFER_BENCH_DEFAULT_PROFILE;
}

std::string FormatMs(double ms) { return fmt::format("{:.2f}", ms); }

void PrintReport(const ScoreReport& r, std::ostream& out) {
  fmt::print(out, "profile: {}\n", r.profile_name);
  for (int t = 1; t <= kNumTests; ++t) {
    fmt::print(out, "  test {}: {:>9.2f}{}\n", t, r.points[t - 1],
               r.failed[t - 1] ? "  (failed)" : "");
  }
  fmt::print(out, "AI score: {:.2f}\n", r.total);
}

void PrintSuite(const SuiteResult& s, std::ostream& out) {
  fmt::print(out, "{:<5} {:<22} {:<10} {:<24} {:>7} {:>12} {}\n", "test",
             "workload", "backend", "dispatch", "images", "avg_ms", "pass");
  for (const Measurement& m : s.measurements) {
    const std::string name = DefaultSpec(m.test_id).name;
    std::string reason = "-";
    if (m.dispatch) {
      reason = DispatchReasonName(m.dispatch->reason);
      if (m.dispatch->op_kind) {
        reason += fmt::format(" ({})", OpKindName(*m.dispatch->op_kind));
      }
    }
    fmt::print(out, "{:<5} {:<22} {:<10} {:<24} {:>7} {:>12} {}\n", m.test_id,
               name, m.backend_id.empty() ? "-" : m.backend_id, reason,
               m.images_processed, FormatMs(m.avg_ms), m.passed ? "yes" : "no");
    if (!m.passed && !m.notes.empty()) fmt::print(out, "      {}\n", m.notes);
  }
  if (s.memory) {
    fmt::print(out, "9     {:<22} {:<10} {} units of 100 px ({})\n",
               DefaultSpec(kMemoryProbeTest).name, s.memory->backend_id,
               s.memory->max_resolution_units,
               LimitingCauseName(s.memory->limiting_cause));
  }
}

int CmdRun(const RunConfig& c, std::ostream& out) {
  ValidateRunConfig(c);
  SuiteConfig sc;
  sc.env.host_id = HostName();
  sc.env.device_name = c.device_name.empty() ? sc.env.host_id : c.device_name;
  sc.env.soc_name = c.soc_name.empty() ? CpuModel() : c.soc_name;
  sc.env.ram_gb = c.ram_gb > 0 ? c.ram_gb : HostRamGb();
  sc.env.backend = c.backend;
  sc.env.threads = c.threads;
  sc.env.scale = c.scale;
  sc.env.seed = c.seed;
  sc.env.mem_cap_bytes = c.mem_cap_bytes;
  sc.env.budget_scale = c.budget_scale;
  sc.tests = c.tests;
  sc.probe_execute = c.probe_execute;
  const BackendRegistry registry = MakeDefaultRegistry(c.threads);
  if (c.backend != kAutoBackend && !registry.Contains(c.backend)) {
    throw BenchError(ErrorKind::kUnknownBackend, c.backend,
                     fmt::format("no backend '{}'; known: {}", c.backend,
                                 fmt::join(registry.List(), ", ")));
  }
  std::unique_ptr<Clock> clock;
  if (c.sim_cost_ms.empty()) {
    clock = std::make_unique<SteadyClock>();
  } else {
    clock = std::make_unique<SimulatedClock>(c.sim_cost_ms);
  }
  const SuiteResult suite =
      RunSuite(sc, registry, *clock, [&](const std::string& line) {
        fmt::print(out, "{}\n", line);
        out.flush();
      });
  SaveSuite(suite, c.out);
  fmt::print(out, "\n");
  PrintSuite(suite, out);
  const std::string profile_path = ResolveProfilePath(c.profile);
  if (fs::exists(profile_path)) {
    const ScoreReport r = AggregateScore(suite, LoadProfile(profile_path));
    fmt::print(out, "AI score: {:.2f} (profile {})\n", r.total,
               r.profile_name);
  } else {
    fmt::print(out, "no profile at {}; score skipped\n", profile_path);
  }
  fmt::print(out, "wrote {}\n", c.out);
  return kExitOk;
}

int CmdScore(const std::string& results, const std::string& profile_flag,
             const std::string& format, std::ostream& out) {
  const ReferenceProfile profile = LoadProfile(ResolveProfilePath(profile_flag));
  const std::vector<SuiteResult> suites = LoadSuites(results);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const SuiteResult& s : suites) {
      nlohmann::json j = ReportToJson(AggregateScore(s, profile));
      j["device_name"] = s.env.device_name;
      arr.push_back(j);
    }
    fmt::print(out, "{}\n", arr.dump(2));
    return kExitOk;
  }
  for (const SuiteResult& s : suites) {
    fmt::print(out, "device: {} ({})\n", s.env.device_name, s.env.soc_name);
    PrintReport(AggregateScore(s, profile), out);
  }
  return kExitOk;
}

int CmdCalibrate(const std::string& results, double total,
                 const std::string& name, const std::string& path,
                 std::ostream& out) {
  const std::vector<SuiteResult> suites = LoadSuites(results);
  if (suites.size() != 1) {
    throw BenchError(ErrorKind::kInvariantViolation, results,
                     fmt::format("calibration needs exactly one suite, found "
                                 "{}", suites.size()));
  }
  const ReferenceProfile p = CalibrateProfile(suites[0], total, name);
  SaveProfile(p, path);
  fmt::print(out, "wrote {} (total {})\n", path, total);
  return kExitOk;
}

std::vector<std::string> ResultFiles(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const std::string& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".jsonl") {
          found.push_back(e.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(in)) {
      files.push_back(in);
    } else {
      throw BenchError(ErrorKind::kIo, in, "no such file or directory");
    }
  }
  return files;
}

int CmdRank(const std::vector<std::string>& inputs, const std::string& group,
            const std::string& format, const std::string& out_dir,
            const std::string& profile_flag, std::ostream& out) {
  const GroupBy g = ParseGroupBy(group);
  const ExportFormat f = ParseExportFormat(format);
  const ReferenceProfile profile = LoadProfile(ResolveProfilePath(profile_flag));
  std::vector<DeviceRecord> records;
  for (const std::string& file : ResultFiles(inputs)) {
    std::vector<DeviceRecord> r = IngestFile(file, profile);
    std::move(r.begin(), r.end(), std::back_inserter(records));
  }
  const std::string text = ExportRows(Rank(records, g, profile), f);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const std::string path = (fs::path(out_dir) / RankingFileName(g, f)).string();
  std::ofstream file(path, std::ios::binary);
  if (!file) throw BenchError(ErrorKind::kIo, path, "cannot open for writing");
  file << text;
  file.flush();
  if (!file) throw BenchError(ErrorKind::kIo, path, "write failed");
  fmt::print(out, "{}wrote {} ({} records)\n", text, path, records.size());
  return kExitOk;
}

int CmdInspect(int test_id, double scale, std::ostream& out) {
  WorkloadSpec spec = ScaledSpec(test_id, scale);
  const Graph g = Instantiate(spec, {.with_weights = false}).graph;
  fmt::print(out, "test {}: {}\n", test_id, spec.name);
  if (test_id == kMemoryProbeTest) {
    fmt::print(out, "aliases test 4's graph ({}); the probe sweeps square "
               "inputs in steps of {} px\n", DefaultSpec(4).name, kProbeUnitPx);
  }
  fmt::print(out, "architecture: {}\ninput: {}x{}x3{}\n", spec.architecture,
             spec.input_h, spec.input_w, spec.quantized ? " (int8)" : "");
  fmt::print(out, "{:<44} {:<17} {:<20} {:>10} {:>14}\n", "node", "op",
             "output", "params", "macs");
  for (const LayerRow& r : LayerTable(g)) {
    fmt::print(out, "{:<44} {:<17} {:<20} {:>10} {:>14}\n", r.id,
               OpKindName(r.kind), r.output.ToString(), r.params, r.macs);
  }
  fmt::print(out, "params: {}\nmacs: {}\npeak activation bytes: {}\n",
             CountParams(g), CountMacs(g), PeakActivationBytes(g));
  // Weights do not depend on resolution, so the int8 variant is calibrated at
  // the smallest size the architecture accepts.
  WorkloadSpec small = DefaultSpec(test_id);
  small.input_w = std::max(1, small.input_w * MinResolution(test_id) /
                                  small.input_h);
  small.input_h = MinResolution(test_id);
  const Workload w = Instantiate(small);
  const Graph& fg = w.float_graph;
  const Graph qg = spec.quantized
                       ? w.graph
                       : Validate(QuantizeGraph(fg, GenerateInput(small, 1),
                                                OptimizedKernels(),
                                                ImageInputQParams()));
  const size_t fb = SerializeWeightsToString(fg.spec().weights).size();
  const size_t qb = SerializeWeightsToString(qg.spec().weights).size();
  fmt::print(out, "serialized weights: float {} bytes, int8 {} bytes "
             "(ratio {:.3f})\n", fb, qb,
             static_cast<double>(fb) / static_cast<double>(qb));
  return kExitOk;
}

}  // namespace

void ValidateRunConfig(const RunConfig& c) {
  auto bad = [](const char* field, const std::string& msg) {
    throw BenchError(ErrorKind::kInvalidArgument, field, msg);
  };
  if (!(c.scale > 0.0 && c.scale <= 1.0)) bad("scale", "scale must be in (0, 1]");
  if (c.threads < 1) bad("threads", "threads must be at least 1");
  if (!(c.budget_scale > 0.0)) bad("budget_scale", "must be positive");
  if (c.mem_cap_bytes < 0) bad("mem_cap", "must be non-negative");
  if (c.out.empty()) bad("out", "output path is empty");
  for (int t : c.tests) {
    if (t < 1 || t > kNumTests) bad("tests", fmt::format("no test {}", t));
  }
}

std::string HostName() {
  char buf[256] = {};
  if (gethostname(buf, sizeof(buf) - 1) != 0 || buf[0] == '\0') {
    return "unknown-host";
  }
  return buf;
}

std::string CpuModel() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const size_t colon = line.find(':');
      if (colon != std::string::npos) {
        std::string s = line.substr(colon + 1);
        s.erase(0, s.find_first_not_of(' '));
        if (!s.empty()) return s;
      }
    }
  }
  return "unknown-cpu";
}

double HostRamGb() {
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page = sysconf(_SC_PAGE_SIZE);
  if (pages <= 0 || page <= 0) return 0.0;
  return static_cast<double>(pages) * static_cast<double>(page) / (1 << 30);
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Inference benchmark harness: nine CNN workloads, timing "
               "protocol, scoring and ranking."};
  app.require_subcommand(1);

  RunConfig rc;
  rc.threads = std::max(1u, std::thread::hardware_concurrency());
  auto* run = app.add_subcommand("run", "Run the suite and write a JSONL file");
  run->add_option("--backend", rc.backend,
                  "Preferred backend: auto, reference, optimized, quantized")
      ->capture_default_str();
  run->add_option("--threads", rc.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--scale", rc.scale, "Resolution and budget scale in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--seed", rc.seed, "Weight and input seed")
      ->capture_default_str();
  run->add_option("--mem-cap", rc.mem_cap_bytes,
                  "Memory probe cap in bytes (suffixes KB/MB/GB, base 1024)")
      ->transform(CLI::AsSizeValue(false))
      ->capture_default_str();
  run->add_option("--budget-scale", rc.budget_scale,
                  "Extra multiplier on every time budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--out", rc.out, "Suite result file")->capture_default_str();
  run->add_option("--profile", rc.profile, "Reference profile for the score");
  run->add_option("--device", rc.device_name, "Device name (default: host)");
  run->add_option("--soc", rc.soc_name, "SoC name (default: CPU model)");
  run->add_option("--ram-gb", rc.ram_gb, "RAM in GB (default: detected)");
  run->add_option("--tests", rc.tests, "Subset of tests 1..9")
      ->delimiter(',');
  run->add_option("--sim-cost-ms", rc.sim_cost_ms,
                  "Use a simulated clock with these per-image costs")
      ->delimiter(',');
  bool analyze_only = false;
  run->add_flag("--probe-analyze-only", analyze_only,
                "Memory probe consults the analyzer without executing");

  std::string results;
  std::string profile;
  std::string format = "text";
  auto* score = app.add_subcommand("score", "Score a suite result file");
  score->add_option("results", results, "Suite JSONL file")->required();
  score->add_option("--profile", profile, "Reference profile");
  score->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  double total = kDefaultTotal;
  std::string name = "calibrated";
  std::string profile_out = "profile.json";
  auto* calibrate =
      app.add_subcommand("calibrate", "Derive a reference profile");
  calibrate->add_option("results", results, "Suite JSONL file")->required();
  calibrate->add_option("--total", total, "Score of the calibrating suite")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  calibrate->add_option("--name", name, "Profile name")->capture_default_str();
  calibrate->add_option("--out", profile_out, "Profile file")
      ->capture_default_str();

  std::vector<std::string> inputs;
  std::string group_by = "device";
  std::string rank_format = "md";
  std::string out_dir = ".";
  auto* rank = app.add_subcommand("rank", "Aggregate suites into a ranking");
  rank->add_option("results", inputs, "Result files or directories")
      ->required();
  rank->add_option("--group-by", group_by, "device or soc")
      ->check(CLI::IsMember({"device", "soc"}))
      ->capture_default_str();
  rank->add_option("--format", rank_format, "md, csv or json")
      ->check(CLI::IsMember({"md", "markdown", "csv", "json"}))
      ->capture_default_str();
  rank->add_option("--out", out_dir, "Output directory")->capture_default_str();
  rank->add_option("--profile", profile, "Reference profile");

  int test_id = 1;
  double inspect_scale = 1.0;
  auto* inspect = app.add_subcommand("inspect", "Describe a workload");
  inspect->add_option("test", test_id, "Test id 1..9")
      ->required()
      ->check(CLI::Range(1, kNumTests));
  inspect->add_option("--scale", inspect_scale, "Resolution scale")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      rc.probe_execute = !analyze_only;
      return CmdRun(rc, out);
    }
    if (*score) return CmdScore(results, profile, format, out);
    if (*calibrate) {
      return CmdCalibrate(results, total, name, profile_out, out);
    }
    if (*rank) {
      return CmdRank(inputs, group_by, rank_format, out_dir, profile, out);
    }
    if (*inspect) return CmdInspect(test_id, inspect_scale, out);
  } catch (const BenchError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace infer_bench
