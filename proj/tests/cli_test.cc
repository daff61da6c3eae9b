/*
 * Copyright 2026 The vobench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "vobench/cli/commands.h"
#include "vobench/cli/config.h"
#include "vobench/simulate/episode.h"

namespace vobench {
namespace cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vobench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string Tmp(const std::string& name) {
  return testing::TempDir() + "/" + name;
}

class CliTest : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    episode_ = new std::string(Tmp("cli.voep"));
    const Result r = Invoke({"record", "--out", *episode_, "--set",
                             "scenario.duration=2", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { delete episode_; }
  static std::string* episode_;
};

std::string* CliTest::episode_ = nullptr;

TEST(ConfigTest, DefaultParamsCells) {
  RunConfig config;
  EXPECT_EQ(ParamsCell(config), "length=0.1;hit=1;miss=0.4");
  config.backend.backend = "skiplist";
  EXPECT_EQ(ParamsCell(config), "length=0.1;min_weight=1");
  config.backend.backend = "tsdf";
  EXPECT_EQ(ParamsCell(config),
            "length=0.1;truncation=0.1;constant_weight=false");
  ApplySetting(&config, "tsdf.voxel_carving", "true");
  EXPECT_EQ(ParamsCell(config),
            "length=0.1;truncation=0.1;constant_weight=false;"
            "tsdf.voxel_carving=true");
}

TEST(ConfigTest, AliasesAndRejections) {
  RunConfig config;
  ApplySetting(&config, "hit", "0.7");
  EXPECT_DOUBLE_EQ(config.backend.octree.hit_prob, 0.7);
  EXPECT_TRUE(config.explicit_keys.count("octree.hit_probability"));
  EXPECT_THROW(ApplySetting(&config, "bogus", "1"), UsageError);
  EXPECT_THROW(ApplySetting(&config, "length", "abc"), UsageError);
  EXPECT_THROW(ApplySetting(&config, "tsdf.constant_weight", "maybe"),
               UsageError);
  EXPECT_THROW(SplitAssignment("novalue"), UsageError);

  RunConfig cross;
  cross.backend.backend = "skiplist";
  ApplySetting(&cross, "truncation", "0.2");
  EXPECT_THROW(ValidateRunConfig(cross), UsageError);

  RunConfig big;
  ApplySetting(&big, "length", "2");
  EXPECT_THROW(ValidateRunConfig(big), UsageError);
  RunConfig tiny;
  ApplySetting(&tiny, "length", "0.005");
  EXPECT_THROW(ValidateRunConfig(tiny), UsageError);

  RunConfig bad_prob;
  ApplySetting(&bad_prob, "miss", "1.5");
  EXPECT_THROW(ValidateRunConfig(bad_prob), UsageError);
}

TEST(ConfigTest, IniFile) {
  const std::string path = Tmp("run.ini");
  std::ofstream(path) << "[run]\nbackend = tsdf\nepisode = x.voep\n"
                      << "[grid]\nvoxel_length = 0.15\n"
                      << "[tsdf]\ntruncation_distance = 0.05\n"
                      << "[scenario]\nduration = 12\nseed = 3\n";
  RunConfig run;
  simulate::ScenarioConfig scenario;
  LoadConfigFile(path, &run, &scenario);
  EXPECT_EQ(run.backend.backend, "tsdf");
  EXPECT_EQ(run.episode, "x.voep");
  EXPECT_DOUBLE_EQ(run.backend.spec.resolution, 0.15);
  EXPECT_DOUBLE_EQ(run.backend.tsdf.truncation_distance, 0.05);
  EXPECT_DOUBLE_EQ(scenario.duration_s, 12.);
  EXPECT_EQ(scenario.seed, 3u);
  ValidateRunConfig(run);

  const std::string bad = Tmp("bad.ini");
  std::ofstream(bad) << "[octree]\nspeed = 3\n";
  EXPECT_THROW(LoadConfigFile(bad, &run, nullptr), UsageError);
}

TEST(CliRecordTest, DeterministicAndHeaderOnly) {
  const std::string a = Tmp("rec_a.voep"), b = Tmp("rec_b.voep");
  ASSERT_EQ(Invoke({"record", "--out", a, "--set", "scenario.duration=0.3"})
                .code,
            0);
  ASSERT_EQ(Invoke({"record", "--out", b, "--set", "scenario.duration=0.3"})
                .code,
            0);
  EXPECT_EQ(ReadFile(a), ReadFile(b));

  const std::string empty = Tmp("rec_empty.voep");
  ASSERT_EQ(
      Invoke({"record", "--out", empty, "--set", "scenario.duration=0"}).code,
      0);
  simulate::EpisodeReader reader(empty);
  EXPECT_FALSE(reader.Next().has_value());

  EXPECT_EQ(Invoke({"record", "--out", a, "--set", "scenario.duration=-1"})
                .code,
            2);
  EXPECT_EQ(Invoke({"record"}).code, 2);
}

TEST_F(CliTest, RunWritesOneRow) {
  const std::string csv = Tmp("run.csv");
  const Result r = Invoke({"run", "--episode", *episode_, "--out", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(ReadFile(csv));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0] + "\n", MetricsCsvHeader());
  EXPECT_EQ(lines[1].rfind("octree,length=0.1;hit=1;miss=0.4,", 0), 0u);
  EXPECT_NE(r.out.find("pooled"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(Invoke({"run", "--episode", *episode_, "--backend", "gridmap"})
                .code,
            2);
  EXPECT_EQ(Invoke({"run", "--episode", *episode_, "--backend", "skiplist",
                    "--set", "tsdf.truncation_distance=0.2"})
                .code,
            2);
  EXPECT_EQ(Invoke({"run", "--episode", *episode_, "--set", "length"}).code,
            2);
  EXPECT_EQ(Invoke({"run"}).code, 2);
  EXPECT_EQ(Invoke({"frobnicate"}).code, 2);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  EXPECT_EQ(Invoke({"run", "--episode", Tmp("missing.voep")}).code, 1);
  const std::string junk = Tmp("junk.voep");
  std::ofstream(junk) << "junk";
  EXPECT_EQ(Invoke({"run", "--episode", junk}).code, 1);
}

TEST_F(CliTest, SweepRowsMatchSingleRuns) {
  const std::string sweep_csv = Tmp("sweep.csv");
  const Result s =
      Invoke({"sweep", "--episode", *episode_, "--backend", "tsdf", "--param",
              "truncation", "--values", "0.05,0.1,0.2", "--jobs", "2",
              "--out", sweep_csv});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto rows = Lines(ReadFile(sweep_csv));
  ASSERT_EQ(rows.size(), 4u);
  const char* values[] = {"0.05", "0.1", "0.2"};
  for (int i = 0; i < 3; ++i) {
    const std::string run_csv = Tmp("single.csv");
    const Result r =
        Invoke({"run", "--episode", *episode_, "--backend", "tsdf", "--set",
                std::string("truncation=") + values[i], "--out", run_csv});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Lines(ReadFile(run_csv))[1], rows[i + 1]);
  }
}

TEST_F(CliTest, SweepRejectsBadValues) {
  EXPECT_EQ(Invoke({"sweep", "--episode", *episode_, "--param", "length",
                    "--values", "0.1,0.10"})
                .code,
            2);
  EXPECT_EQ(Invoke({"sweep", "--episode", *episode_, "--param", "length",
                    "--values", "0.1,5"})
                .code,
            2);
  EXPECT_EQ(Invoke({"sweep", "--episode", *episode_, "--param", "length",
                    "--values", "0.1", "--jobs", "0"})
                .code,
            2);
}

TEST_F(CliTest, ExportMatchesClassification) {
  const std::string prefix = Tmp("snap");
  RunConfig config;
  config.episode = *episode_;
  const ExportSummary s = ExportSnapshot(config, 1.5, prefix);
  ASSERT_TRUE(s.snapshot_ns.has_value());
  EXPECT_LE(*s.snapshot_ns, 1500000000u);
  EXPECT_EQ(Lines(ReadFile(prefix + ".xyz")).size(), s.occupied);
  const auto colored = Lines(ReadFile(prefix + "_classified.xyzrgb"));
  EXPECT_EQ(colored.size(), s.tp + s.fp + s.fn);
  EXPECT_GT(s.tp, 0u);
  for (const auto& line : colored) {
    std::stringstream in(line);
    double x, y, z;
    int r, g, b;
    ASSERT_TRUE(in >> x >> y >> z >> r >> g >> b);
    EXPECT_EQ(r + g + b, 255);
  }

  const ExportSummary fresh = ExportSnapshot(config, 0., Tmp("fresh"));
  EXPECT_FALSE(fresh.snapshot_ns.has_value());
  EXPECT_TRUE(ReadFile(Tmp("fresh") + ".xyz").empty());
  EXPECT_THROW(ExportSnapshot(config, 5., Tmp("late")), UsageError);
}

TEST_F(CliTest, ReportReadsCsv) {
  const std::string csv = Tmp("report.csv");
  ASSERT_EQ(Invoke({"run", "--episode", *episode_, "--out", csv}).code, 0);
  const Result r = Invoke({"report", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("octree"), std::string::npos);
  EXPECT_EQ(Invoke({"report", *episode_}).code, 1);
}

}  // namespace
}  // namespace cli
}  // namespace vobench
