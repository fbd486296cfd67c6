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

#include "infer_bench/aggregation/aggregation.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "infer_bench/common/error.h"
#include "infer_bench/common/json_fields.h"

namespace infer_bench {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kZThreshold = 3.5;
constexpr double kZScale = 0.6745;
constexpr double kMaxDropFraction = 0.3;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Samples surviving one pass of the z-score rule.
std::vector<double> OnePass(const std::vector<double>& x) {
  if (x.size() < 2) return x;
  const double med = Median(x);
  std::vector<double> dev;
  dev.reserve(x.size());
  for (double v : x) dev.push_back(std::abs(v - med));
  const double mad = Median(dev);
  if (mad == 0.0) return x;
  std::vector<double> kept;
  for (double v : x) {
    if (kZScale * std::abs(v - med) / mad <= kZThreshold) kept.push_back(v);
  }
  return kept;
}

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::optional<double> FilteredMean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Mean(RemoveOutliers(v));
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string MarkdownField(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::vector<std::string> Header() {
  std::vector<std::string> h = {"group"};
  for (int t = 1; t <= kTimedTests; ++t) h.push_back(fmt::format("test{}_ms", t));
  h.insert(h.end(), {"memory_units", "ai_score", "samples"});
  return h;
}

std::string Opt(const std::optional<double>& v, int digits) {
  return v ? fmt::format("{:.{}f}", *v, digits) : "";
}

std::vector<std::string> Cells(const RankingRow& r) {
  std::vector<std::string> c = {r.group};
  for (const auto& ms : r.test_ms) c.push_back(Opt(ms, 3));
  c.push_back(Opt(r.memory_units, 2));
  c.push_back(fmt::format("{:.2f}", r.ai_score));
  c.push_back(fmt::format("{}", r.samples));
  return c;
}

ordered_json Nullable(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::vector<DeviceRecord> Ingest(std::istream& in, const std::string& source,
                                 const ReferenceProfile& profile) {
  std::vector<DeviceRecord> records;
  for (SuiteResult& s : ReadSuites(in, source)) {
    DeviceRecord r;
    r.device_name = s.env.device_name;
    r.soc_name = s.env.soc_name;
    r.ram_gb = s.env.ram_gb;
    r.score = AggregateScore(s, profile);
    r.suite = std::move(s);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<DeviceRecord> IngestFile(const std::string& path,
                                     const ReferenceProfile& profile) {
  std::ifstream in(path);
  if (!in) throw BenchError(ErrorKind::kIo, path, "cannot open for reading");
  return Ingest(in, path, profile);
}

std::vector<double> RemoveOutliers(const std::vector<double>& samples) {
  std::vector<double> current = samples;
  for (;;) {
    std::vector<double> next = OnePass(current);
    if (next.size() == current.size()) break;
    current = std::move(next);
  }
  const auto cap = static_cast<size_t>(
      std::floor(kMaxDropFraction * static_cast<double>(samples.size()) + 0.5));
  if (samples.size() - current.size() > cap) return samples;
  return current;
}

std::string GroupByName(GroupBy g) {
  return g == GroupBy::kDevice ? "device" : "soc";
}

GroupBy ParseGroupBy(const std::string& name) {
  if (name == "device") return GroupBy::kDevice;
  if (name == "soc") return GroupBy::kSoc;
  throw BenchError(ErrorKind::kInvalidArgument, "group_by",
                   fmt::format("unknown grouping '{}'", name));
}

std::vector<RankingRow> Rank(const std::vector<DeviceRecord>& records,
                             GroupBy group_by,
                             const ReferenceProfile& profile) {
  std::map<std::string, std::vector<const DeviceRecord*>> groups;
  for (const DeviceRecord& r : records) {
    const std::string& key =
        group_by == GroupBy::kDevice ? r.device_name : r.soc_name;
    if (key.empty()) {
      throw BenchError(ErrorKind::kInvariantViolation,
                       GroupByName(group_by) + "_name", "empty group key");
    }
    groups[key].push_back(&r);
  }
  std::vector<RankingRow> rows;
  for (const auto& [key, members] : groups) {
    RankingRow row;
    row.group = key;
    row.samples = static_cast<int64_t>(members.size());
    SuiteMetrics metrics;
    for (int t = 1; t <= kTimedTests; ++t) {
      std::vector<double> v;
      for (const DeviceRecord* r : members) {
        const Measurement* m = r->suite.Find(t);
        if (m && m->passed) v.push_back(m->avg_ms);
      }
      row.test_ms[t - 1] = metrics.avg_ms[t - 1] = FilteredMean(v);
    }
    std::vector<double> units;
    for (const DeviceRecord* r : members) {
      if (r->suite.memory) units.push_back(r->suite.memory->max_resolution_units);
    }
    row.memory_units = metrics.memory_units = FilteredMean(units);
    row.ai_score = ScoreMetrics(metrics, profile).total;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const RankingRow& a,
                                         const RankingRow& b) {
    if (a.ai_score != b.ai_score) return a.ai_score > b.ai_score;
    return a.group < b.group;
  });
  return rows;
}

std::string ExportFormatExtension(ExportFormat f) {
  switch (f) {
    case ExportFormat::kMarkdown:
      return "md";
    case ExportFormat::kCsv:
      return "csv";
    case ExportFormat::kJson:
      return "json";
  }
  return "";
}

ExportFormat ParseExportFormat(const std::string& name) {
  if (name == "markdown" || name == "md") return ExportFormat::kMarkdown;
  if (name == "csv") return ExportFormat::kCsv;
  if (name == "json") return ExportFormat::kJson;
  throw BenchError(ErrorKind::kInvalidArgument, "format",
                   fmt::format("unknown export format '{}'", name));
}

std::string ExportRows(const std::vector<RankingRow>& rows, ExportFormat f) {
  std::string out;
  if (f == ExportFormat::kJson) {
    ordered_json arr = ordered_json::array();
    for (const RankingRow& r : rows) {
      ordered_json ms = ordered_json::array();
      for (const auto& v : r.test_ms) ms.push_back(Nullable(v));
      ordered_json o;
      o["group"] = r.group;
      o["test_ms"] = ms;
      o["memory_units"] = Nullable(r.memory_units);
      o["ai_score"] = r.ai_score;
      o["samples"] = r.samples;
      arr.push_back(o);
    }
    return arr.dump(2) + "\n";
  }
  const std::vector<std::string> header = Header();
  if (f == ExportFormat::kCsv) {
    out += fmt::format("{}\n", fmt::join(header, ","));
    for (const RankingRow& r : rows) {
      std::vector<std::string> c = Cells(r);
      c[0] = CsvField(c[0]);
      out += fmt::format("{}\n", fmt::join(c, ","));
    }
    return out;
  }
  out += fmt::format("| {} |\n", fmt::join(header, " | "));
  out += "|";
  for (size_t i = 0; i < header.size(); ++i) out += i == 0 ? "---|" : "---:|";
  out += "\n";
  for (const RankingRow& r : rows) {
    std::vector<std::string> c = Cells(r);
    c[0] = MarkdownField(c[0]);
    out += fmt::format("| {} |\n", fmt::join(c, " | "));
  }
  return out;
}

std::vector<RankingRow> RowsFromJson(const json& j) {
  using json_fields::As;
  using json_fields::Field;
  using json_fields::ParseError;
  if (!j.is_array()) ParseError("rows", "ranking JSON must be an array");
  auto opt = [](const json& v, const char* key) -> std::optional<double> {
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) ParseError(key, fmt::format("'{}' must be a number "
                                                    "or null", key));
    return v.get<double>();
  };
  std::vector<RankingRow> rows;
  for (const json& o : j) {
    RankingRow r;
    r.group = json_fields::NonEmptyString(o, "group");
    const json& ms = Field(o, "test_ms");
    if (!ms.is_array() || ms.size() != kTimedTests) {
      ParseError("test_ms", fmt::format("test_ms needs {} entries",
                                        kTimedTests));
    }
    for (int t = 0; t < kTimedTests; ++t) r.test_ms[t] = opt(ms[t], "test_ms");
    r.memory_units = opt(Field(o, "memory_units"), "memory_units");
    r.ai_score = json_fields::Number(o, "ai_score");
    r.samples = As<int64_t>(o, "samples");
    if (r.samples < 1) ParseError("samples", "samples must be at least 1");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string RankingFileName(GroupBy g, ExportFormat f) {
  return fmt::format("{}-ranking.{}", GroupByName(g), ExportFormatExtension(f));
}

}  // namespace infer_bench
