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

#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "infer_bench/aggregation/aggregation.h"
#include "infer_bench/common/error.h"
#include "infer_bench/common/splitmix.h"

namespace infer_bench {
namespace {

const std::string kData = INFER_BENCH_TEST_DATA_DIR;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ReferenceProfile FixtureProfile() {
  return LoadProfile(kData + "/ranking_profile.json");
}

std::vector<DeviceRecord> Fixture() {
  return IngestFile(kData + "/ranking_fixture.jsonl", FixtureProfile());
}

TEST(OutlierTest, Examples) {
  EXPECT_EQ(RemoveOutliers({100, 102, 98, 1000}),
            (std::vector<double>{100, 102, 98}));
  EXPECT_EQ(RemoveOutliers({7, 7, 7, 7}), (std::vector<double>{7, 7, 7, 7}));
  EXPECT_EQ(RemoveOutliers({5}), (std::vector<double>{5}));
  EXPECT_TRUE(RemoveOutliers({}).empty());
  // Three of ten is exactly the cap.
  EXPECT_EQ(RemoveOutliers({10, 10.1, 9.9, 10, 10.2, 9.8, 10, 500, 600, 700})
                .size(),
            7u);
}

TEST(OutlierTest, CapReturnsInputUnchanged) {
  // A second pass would drop 120 as well; two of four exceeds the cap.
  const std::vector<double> v = {90, 88, 2000, 120};
  EXPECT_EQ(RemoveOutliers(v), v);
}

TEST(OutlierTest, IdempotentAndPermutationInvariant) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + rng.Next() % 12);
    for (double& x : v) {
      x = 100 + std::floor(rng.NextUnit() * 10);
      if (rng.NextUnit() < 0.2) x *= 10;
    }
    const std::vector<double> once = RemoveOutliers(v);
    EXPECT_EQ(RemoveOutliers(once), once);
    std::vector<double> shuffled = v;
    std::reverse(shuffled.begin(), shuffled.end());
    std::rotate(shuffled.begin(), shuffled.begin() + shuffled.size() / 2,
                shuffled.end());
    std::vector<double> a = once;
    std::vector<double> b = RemoveOutliers(shuffled);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(IngestTest, Basics) {
  std::istringstream empty("");
  EXPECT_TRUE(Ingest(empty, "e", FixtureProfile()).empty());
  const std::vector<DeviceRecord> records = Fixture();
  ASSERT_EQ(records.size(), 6u);
  EXPECT_EQ(records[0].device_name, "Alpha Phone");
  EXPECT_EQ(records[4].soc_name, "SoC-B");
  EXPECT_TRUE(records[4].score.failed[5]);
  // Record 0 equals the profile's reference runtimes, memory 6 = l_ref.
  EXPECT_NEAR(records[0].score.total, 1000.0, 1e-9);
}

TEST(IngestTest, OneHeaderLineIsOneRecord) {
  SuiteEnvironment env;
  env.device_name = "d";
  env.soc_name = "s";
  std::istringstream in(EnvironmentToJson(env).dump() + "\n");
  const auto records = Ingest(in, "one", FixtureProfile());
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].score.total, 0.0);
}

TEST(IngestTest, MissingSocNamesLineAndField) {
  std::istringstream in(ReadFile(kData + "/ranking_fixture.jsonl"));
  std::string text;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (n == 11) {
      nlohmann::json j = nlohmann::json::parse(line);
      j.erase("soc_name");
      line = j.dump();
    }
    text += line + "\n";
  }
  std::istringstream bad(text);
  try {
    Ingest(bad, "fixture", FixtureProfile());
    FAIL();
  } catch (const BenchError& e) {
    EXPECT_EQ(e.subject(), "fixture:11");
    EXPECT_NE(std::string(e.what()).find("soc_name"), std::string::npos);
  }
}

TEST(RankTest, SingleRecordIsIdentity) {
  std::vector<DeviceRecord> one = {Fixture()[3]};
  const auto rows = Rank(one, GroupBy::kDevice, FixtureProfile());
  ASSERT_EQ(rows.size(), 1u);
  const DeviceRecord& r = one[0];
  for (int t = 1; t <= 8; ++t) {
    EXPECT_EQ(rows[0].test_ms[t - 1], r.suite.Find(t)->avg_ms);
  }
  EXPECT_EQ(rows[0].memory_units, r.suite.memory->max_resolution_units);
  EXPECT_DOUBLE_EQ(rows[0].ai_score, r.score.total);
  EXPECT_EQ(rows[0].samples, 1);
}

TEST(RankTest, IdenticalRecords) {
  const DeviceRecord r = Fixture()[1];
  const auto one = Rank({r}, GroupBy::kSoc, FixtureProfile());
  const auto two = Rank({r, r}, GroupBy::kSoc, FixtureProfile());
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].samples, 2);
  RankingRow a = one[0];
  a.samples = 2;
  EXPECT_EQ(a, two[0]);
}

TEST(RankTest, OutlierRecordMatchesTwoRecordMean) {
  const auto records = Fixture();
  const auto rows = Rank({records[0], records[1], records[2]},
                         GroupBy::kDevice, FixtureProfile());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].test_ms[3], (90.0 + 88.0) / 2);
}

TEST(RankTest, SortedByScoreThenGroup) {
  DeviceRecord a = Fixture()[0];
  DeviceRecord b = a;
  a.device_name = "zeta";
  b.device_name = "eta";
  const auto rows = Rank({a, b}, GroupBy::kDevice, FixtureProfile());
  EXPECT_EQ(rows[0].group, "eta");
  EXPECT_EQ(rows[1].group, "zeta");
}

TEST(ExportTest, GoldenCsv) {
  const auto records = Fixture();
  for (GroupBy g : {GroupBy::kDevice, GroupBy::kSoc}) {
    const auto rows = Rank(records, g, FixtureProfile());
    EXPECT_EQ(ExportRows(rows, ExportFormat::kCsv),
              ReadFile(kData + "/ranking_" + GroupByName(g) + ".csv"));
  }
}

TEST(ExportTest, EmptyRowsGiveHeaderOnly) {
  const std::string csv = ExportRows({}, ExportFormat::kCsv);
  EXPECT_EQ(csv,
            "group,test1_ms,test2_ms,test3_ms,test4_ms,test5_ms,test6_ms,"
            "test7_ms,test8_ms,memory_units,ai_score,samples\n");
  const std::string md = ExportRows({}, ExportFormat::kMarkdown);
  EXPECT_EQ(std::count(md.begin(), md.end(), '\n'), 2);
  EXPECT_EQ(ExportRows({}, ExportFormat::kJson), "[]\n");
}

TEST(ExportTest, JsonRoundTrip) {
  const auto rows = Rank(Fixture(), GroupBy::kDevice, FixtureProfile());
  const std::string text = ExportRows(rows, ExportFormat::kJson);
  EXPECT_EQ(RowsFromJson(nlohmann::json::parse(text)), rows);
  EXPECT_LT(text.find("\"group\""), text.find("\"test_ms\""));
}

TEST(ExportTest, Markdown) {
  const auto rows = Rank(Fixture(), GroupBy::kSoc, FixtureProfile());
  const std::string md = ExportRows(rows, ExportFormat::kMarkdown);
  EXPECT_EQ(md.rfind("| group | test1_ms", 0), 0u);
  EXPECT_NE(md.find("| SoC-B | 25.500 |"), std::string::npos);
  EXPECT_EQ(RankingFileName(GroupBy::kSoc, ExportFormat::kMarkdown),
            "soc-ranking.md");
}

}  // namespace
}  // namespace infer_bench
