// Copyright 2026 The coopnet Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "coopnet/errors.hpp"
#include "coopnet/pipeline.hpp"
#include "test_util.hpp"

namespace coopnet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("coopnet_pipeline_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << body;
    return path.string();
  }

  PipelineConfig small_synth() {
    PipelineConfig cfg;
    cfg.synth = json{{"k_groups", 3}, {"group_size", 12}, {"courses_core_per_group", 8},
                     {"courses_shared", 5}, {"p_core", 0.9}, {"p_cross", 0.05},
                     {"labels", {"a", "b", "c"}}};
    cfg.seed = 11;
    cfg.quantile = 0.8;
    cfg.layout.iterations = 50;
    cfg.formats = {ExportFormat::kGexf, ExportFormat::kGraphml, ExportFormat::kJsonl};
    cfg.out_dir = (dir_ / "out").string();
    return cfg;
  }

  fs::path dir_;
};

TEST_F(PipelineTest, ConfigJsonRoundTrip) {
  auto cfg = small_synth();
  cfg.distance_mode = DistanceMode::kWeighted;
  cfg.zero_policy = ZeroPolicy::kExcludePair;
  cfg.louvain.node_order = NodeOrder::kShuffle;
  cfg.metrics.counting = Counting::kWeighted;
  const auto j = to_json(cfg);
  EXPECT_EQ(to_json(pipeline_config_from_json(j)), j);
  // A manifest is accepted in place of a config.
  const json manifest = {{"coopnet_version", kVersion}, {"config", j}};
  EXPECT_EQ(to_json(pipeline_config_from_json(manifest)), j);
}

TEST_F(PipelineTest, ConfigErrors) {
  EXPECT_THROW(pipeline_config_from_json({{"bogus", 1}}), ConfigError);
  EXPECT_THROW(pipeline_config_from_json({{"similarity", {{"quantile", 1.0}}}}),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json({{"similarity", {{"mode", "cosine"}}}}),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json({{"output", {{"formats", {"png"}}}}}),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json({{"seed", "abc"}}), ConfigError);
  const auto partial = pipeline_config_from_json({{"similarity", {{"quantile", 0.9}}}});
  EXPECT_EQ(partial.quantile, 0.9);
  EXPECT_EQ(partial.zero_policy, ZeroPolicy::kCapToOne);
}

TEST_F(PipelineTest, InMemoryRunIsDeterministic) {
  const auto cfg = small_synth();
  const auto a = run_pipeline_in_memory(cfg);
  const auto b = run_pipeline_in_memory(cfg);
  EXPECT_EQ(a.files, b.files);
  for (const char* name : {"partition.csv", "report.json", "report.txt", "positions.csv",
                           "graph.gexf", "graph.graphml", "graph.jsonl", "truth.csv"}) {
    EXPECT_TRUE(a.files.count(name)) << name;
  }
  EXPECT_EQ(a.manifest.at("seeds"), b.manifest.at("seeds"));
  EXPECT_EQ(a.manifest.at("coopnet_version"), kVersion);
  const auto report = json::parse(a.files.at("report.json"));
  EXPECT_EQ(report.at("report_version"), 1);
  // Entities the cutoff isolates stay unassigned and count as misses; every
  // community found is pure.
  EXPECT_GE(report.at("accuracy").get<double>(), 0.9);
  for (const auto& c : report.at("communities")) {
    EXPECT_DOUBLE_EQ(c.at("purity").get<double>(), 1.0);
  }
}

TEST_F(PipelineTest, IdenticalPairGivesOneTightCommunity) {
  PipelineConfig cfg;
  cfg.affiliation_path = write("aff.csv", "entity_id,feature_id\na,x\na,y\nb,x\nb,y\n");
  cfg.out_dir = (dir_ / "out").string();
  cfg.layout_enabled = false;
  const auto out = run_pipeline_in_memory(cfg);
  const auto report = json::parse(out.files.at("report.json"));
  ASSERT_EQ(report.at("communities").size(), 1u);
  EXPECT_EQ(report.at("communities")[0].at("size"), 2);
  EXPECT_EQ(report.at("communities")[0].at("conductance"), 0.0);
}

TEST_F(PipelineTest, FileInputsWithMetadata) {
  // Two triangles of identical profiles, disjoint between the triangles.
  std::string aff = "entity_id,feature_id\n";
  std::string meta = "entity_id,grade,label\n";
  for (int i = 0; i < 6; ++i) {
    const auto id = "s" + std::to_string(i);
    const std::string group = i < 3 ? "x" : "y";
    aff += id + ",core_" + group + "1\n" + id + ",core_" + group + "2\n";
    meta += id + "," + (i < 3 ? "4" : "2") + "," + group + "\n";
  }
  PipelineConfig cfg;
  cfg.affiliation_path = write("aff.csv", aff);
  cfg.metadata_path = write("meta.csv", meta);
  cfg.quantile = 0.5;
  cfg.layout_enabled = false;
  cfg.out_dir = (dir_ / "out").string();
  const auto out = run_pipeline_in_memory(cfg);
  const auto report = json::parse(out.files.at("report.json"));
  EXPECT_EQ(report.at("accuracy"), 1.0);
  ASSERT_EQ(report.at("communities").size(), 2u);
  EXPECT_EQ(report.at("communities")[0].at("mean_grade"), 4.0);
  EXPECT_EQ(report.at("communities")[1].at("mean_grade"), 2.0);
  EXPECT_FALSE(out.files.count("positions.csv"));
}

TEST_F(PipelineTest, StageErrorsNameTheStageAndKeepTheirKind) {
  PipelineConfig cfg;
  cfg.affiliation_path = write("bad.csv", "entity_id,feature_id\na\n");
  cfg.out_dir = (dir_ / "out").string();
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("stage 'ingest'"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(dir_ / "out" / "partition.csv"));

  cfg.affiliation_path = (dir_ / "missing.csv").string();
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST_F(PipelineTest, NoEdgesIsADataError) {
  PipelineConfig cfg;
  // Three tied pairs: the cutoff equals their common value, so the strict
  // cut keeps none of them.
  cfg.affiliation_path = write("aff.csv", "entity_id,feature_id\na,x\nb,y\nc,z\n");
  cfg.quantile = 0.5;
  cfg.out_dir = (dir_ / "out").string();
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("stage 'detect'"), std::string::npos);
  }
  EXPECT_TRUE(!fs::exists(dir_ / "out") || fs::is_empty(dir_ / "out"));
}

TEST_F(PipelineTest, WritesEveryOutputAndManifestReproduces) {
  const auto cfg = small_synth();
  const auto manifest = run_pipeline(cfg);
  for (const auto& name : manifest.at("outputs")) {
    EXPECT_TRUE(fs::exists(fs::path(cfg.out_dir) / name.get<std::string>())) << name;
  }
  const auto first = testing::read_file(cfg.out_dir + "/report.json");
  const auto again = pipeline_config_from_json(
      json::parse(testing::read_file(cfg.out_dir + "/manifest.json")));
  run_pipeline(again);
  EXPECT_EQ(testing::read_file(cfg.out_dir + "/report.json"), first);
}

}  // namespace
}  // namespace coopnet
