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

#include <filesystem>

#include <gtest/gtest.h>

#include "infer_bench/common/error.h"
#include "infer_bench/scoring/scoring.h"

namespace infer_bench {
namespace {

SuiteResult MakeSuite(const std::array<double, 8>& avg_ms, int units) {
  SuiteResult s;
  for (int t = 1; t <= 8; ++t) {
    Measurement m;
    m.test_id = t;
    m.per_image_ms = {avg_ms[t - 1]};
    m.images_processed = 1;
    m.avg_ms = avg_ms[t - 1];
    m.passed = true;
    s.measurements.push_back(m);
  }
  MemoryProbeResult r;
  r.max_resolution_units = units;
  s.memory = r;
  return s;
}

const std::array<double, 8> kRuntimes = {31.5, 410.0, 1210.25, 87.0,
                                         640.0, 1533.0, 97.5, 512.0};

ReferenceProfile Profile(double w) {
  ReferenceProfile p;
  p.name = "test";
  p.t_ref = kRuntimes;
  p.l_ref = 4;
  p.weights.fill(w);
  return p;
}

TEST(ScoreTest, Definition) {
  const ReferenceProfile p = Profile(100);
  SuiteResult s = MakeSuite(kRuntimes, 4);
  EXPECT_EQ(ScoreTest(s.measurements[2], p), 100.0);
  Measurement half = s.measurements[2];
  half.avg_ms /= 2;
  EXPECT_EQ(ScoreTest(half, p), 200.0);
  half.passed = false;
  EXPECT_EQ(ScoreTest(half, p), 0.0);
  Measurement zero = s.measurements[0];
  zero.avg_ms = 0;
  EXPECT_THROW(ScoreTest(zero, p), BenchError);
  Measurement probe;
  probe.test_id = 9;
  EXPECT_THROW(ScoreTest(probe, p), BenchError);
}

TEST(ScoreTest, Memory) {
  const ReferenceProfile p = Profile(100);
  MemoryProbeResult r;
  r.max_resolution_units = 4;
  EXPECT_EQ(ScoreMemory(r, p), 100.0);
  r.max_resolution_units = 0;
  EXPECT_EQ(ScoreMemory(r, p), 0.0);
  r.max_resolution_units = 6;
  EXPECT_EQ(ScoreMemory(r, p), 150.0);
}

TEST(ScoreTest, AggregateConventions) {
  const ReferenceProfile p = Profile(1000.0 / 9);
  EXPECT_EQ(AggregateScore(MakeSuite(kRuntimes, 4), p).total, 1000.0);

  std::array<double, 8> halved = kRuntimes;
  for (double& v : halved) v /= 2;
  EXPECT_NEAR(AggregateScore(MakeSuite(halved, 8), p).total, 2000.0, 1e-9);

  SuiteResult one_failed = MakeSuite(kRuntimes, 4);
  one_failed.measurements[4].passed = false;
  ScoreReport r = AggregateScore(one_failed, p);
  EXPECT_NEAR(r.total, 1000.0 - 1000.0 / 9, 1e-9);
  EXPECT_TRUE(r.failed[4]);
  EXPECT_EQ(r.points[4], 0.0);

  SuiteResult missing = MakeSuite(kRuntimes, 4);
  missing.measurements.pop_back();
  missing.memory.reset();
  r = AggregateScore(missing, p);
  EXPECT_TRUE(r.failed[7]);
  EXPECT_TRUE(r.failed[8]);
  EXPECT_NEAR(r.total, 7000.0 / 9, 1e-9);
}

TEST(CalibrateTest, FixedPoint) {
  const SuiteResult s = MakeSuite(kRuntimes, 5);
  for (double target : {1000.0, 900.0, 1293.0, 1.0}) {
    const ReferenceProfile p = CalibrateProfile(s, target, "calib");
    EXPECT_EQ(AggregateScore(s, p).total, target);
  }
  const ScoreReport r = AggregateScore(s, CalibrateProfile(s, 900, "c"));
  for (double pts : r.points) EXPECT_EQ(pts, 100.0);
}

TEST(CalibrateTest, CrossSuite) {
  const ReferenceProfile p =
      CalibrateProfile(MakeSuite(kRuntimes, 5), 1000, "a");
  std::array<double, 8> slower = kRuntimes;
  for (double& v : slower) v *= 1.1;
  const double total = AggregateScore(MakeSuite(slower, 5), p).total;
  // T * (8 / (9 * 1.1) + 1 / 9) with T = 1000.
  EXPECT_NEAR(total, 919.191919191919, 1e-9);
}

TEST(CalibrateTest, RejectsFailedSuites) {
  SuiteResult s = MakeSuite(kRuntimes, 5);
  s.measurements[1].passed = false;
  EXPECT_THROW(CalibrateProfile(s, 1000, "x"), BenchError);
  SuiteResult no_mem = MakeSuite(kRuntimes, 0);
  EXPECT_THROW(CalibrateProfile(no_mem, 1000, "x"), BenchError);
  EXPECT_THROW(CalibrateProfile(MakeSuite(kRuntimes, 5), 0, "x"), BenchError);
}

TEST(ScoreTest, SlowerSuiteScoresLower) {
  const ReferenceProfile p = Profile(1000.0 / 9);
  std::array<double, 8> slower = kRuntimes;
  for (double& v : slower) v *= 1.25;
  EXPECT_LT(AggregateScore(MakeSuite(slower, 4), p).total,
            AggregateScore(MakeSuite(kRuntimes, 4), p).total);
}

TEST(ScoreTest, DependsOnlyOnAverage) {
  const ReferenceProfile p = Profile(10);
  Measurement a;
  a.test_id = 3;
  a.per_image_ms = {5, 9, 4, 6};
  a.images_processed = 4;
  a.avg_ms = 5;
  a.passed = true;
  Measurement b = a;
  b.per_image_ms = {9, 5, 6, 4};
  EXPECT_EQ(ScoreTest(a, p), ScoreTest(b, p));
}

TEST(ProfileTest, JsonRoundTripAndValidation) {
  const ReferenceProfile p = Profile(1000.0 / 9);
  const auto path =
      (std::filesystem::temp_directory_path() / "ib_profile.json").string();
  SaveProfile(p, path);
  const ReferenceProfile q = LoadProfile(path);
  EXPECT_EQ(q.name, p.name);
  EXPECT_EQ(q.t_ref, p.t_ref);
  EXPECT_EQ(q.l_ref, p.l_ref);
  EXPECT_EQ(q.weights, p.weights);
  std::filesystem::remove(path);

  nlohmann::json j = ProfileToJson(p);
  j["t_ref"][2] = 0;
  EXPECT_THROW(ProfileFromJson(j), BenchError);
  j = ProfileToJson(p);
  j["l_ref"] = 0.5;
  EXPECT_THROW(ProfileFromJson(j), BenchError);
  j = ProfileToJson(p);
  j["weights"] = std::vector<double>(9, 0.0);
  EXPECT_THROW(ProfileFromJson(j), BenchError);
  j = ProfileToJson(p);
  j["weights"] = std::vector<double>(8, 1.0);
  EXPECT_THROW(ProfileFromJson(j), BenchError);
  EXPECT_THROW(LoadProfile("/nonexistent/profile.json"), BenchError);
}

}  // namespace
}  // namespace infer_bench
