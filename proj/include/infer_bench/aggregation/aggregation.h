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

#ifndef INFER_BENCH_AGGREGATION_AGGREGATION_H_
#define INFER_BENCH_AGGREGATION_AGGREGATION_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "infer_bench/scoring/scoring.h"

namespace infer_bench {

struct DeviceRecord {
  std::string device_name;
  std::string soc_name;
  double ram_gb = 0.0;
  SuiteResult suite;
  ScoreReport score;
};

// One record per suite in a runner JSONL stream, scored under `profile`.
// Malformed lines throw kParse naming the line and field.
std::vector<DeviceRecord> Ingest(std::istream& in, const std::string& source,
                                 const ReferenceProfile& profile);
std::vector<DeviceRecord> IngestFile(const std::string& path,
                                     const ReferenceProfile& profile);

// Modified z-score filter, 0.6745 |x - median| / MAD > 3.5, applied until no
// further sample is dropped. Nothing is dropped when MAD = 0, and when the
// total would exceed 30% of the input (rounded to nearest) the input is
// returned unchanged. Kept samples stay in input order.
std::vector<double> RemoveOutliers(const std::vector<double>& samples);

enum class GroupBy { kDevice, kSoc };
std::string GroupByName(GroupBy g);
GroupBy ParseGroupBy(const std::string& name);

struct RankingRow {
  std::string group;
  // Aggregated average runtime of tests 1..8; absent when no record passed.
  std::array<std::optional<double>, kTimedTests> test_ms;
  std::optional<double> memory_units;
  double ai_score = 0.0;
  int64_t samples = 0;

  friend bool operator==(const RankingRow&, const RankingRow&) = default;
};

// Groups records, filters outliers per metric, averages, and recomputes the AI
// score from the aggregated metrics. Sorted by descending score, then group.
std::vector<RankingRow> Rank(const std::vector<DeviceRecord>& records,
                             GroupBy group_by, const ReferenceProfile& profile);

enum class ExportFormat { kMarkdown, kCsv, kJson };
std::string ExportFormatExtension(ExportFormat f);
ExportFormat ParseExportFormat(const std::string& name);

std::string ExportRows(const std::vector<RankingRow>& rows, ExportFormat f);
std::vector<RankingRow> RowsFromJson(const nlohmann::json& j);

// "{group_by}-ranking.{ext}".
std::string RankingFileName(GroupBy g, ExportFormat f);

}  // namespace infer_bench

#endif  // INFER_BENCH_AGGREGATION_AGGREGATION_H_
