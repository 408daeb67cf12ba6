// Copyright 2026 The tweetprep Authors
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

#include <json.hpp>

#include "harness.hpp"
#include "tweetprep/bench.hpp"
#include "tweetprep/error.hpp"
#include "tweetprep/io.hpp"
#include "tweetprep/pipeline.hpp"
#include "tweetprep/records.hpp"

namespace tweetprep {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;
using testing::scratch_dir;

TEST(Stages, NamesRoundTrip) {
  for (Stage s : {Stage::kNormalize, Stage::kTrainTokenizer, Stage::kEncode, Stage::kPack, Stage::kStats,
                  Stage::kSplit, Stage::kPrompt, Stage::kCost, Stage::kBench}) {
    EXPECT_EQ(parse_stage(stage_name(s)), s);
  }
  EXPECT_FALSE(parse_stage("deploy"));
}

TEST(Config, FileKeysApply) {
  PipelineConfig cfg;
  apply_config(cfg, {{"block_len", "64"}, {"mask_rate", "0.2"}, {"seed", "9"},
                     {"count_mode", "whitespace"}, {"manifest.A", "/tmp/a.jsonl"}});
  EXPECT_EQ(cfg.block_len, 64u);
  EXPECT_DOUBLE_EQ(cfg.mask_rate, 0.2);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.count_mode, TokenCountMode::kWhitespace);
  ASSERT_EQ(cfg.manifests.size(), 1u);
  EXPECT_EQ(cfg.manifests[0].first, "A");
  EXPECT_THROW(apply_config(cfg, {{"colour", "red"}}), BadConfig);
  EXPECT_THROW(apply_config(cfg, {{"block_len", "many"}}), BadConfig);
}

TEST(Config, ValidationBeforeWork) {
  PipelineConfig cfg;
  cfg.input = fixture_path("tweets100.jsonl");
  cfg.output = scratch_dir("validate") / "out.bin";
  cfg.block_len = 3;
  EXPECT_THROW(run_stage(cfg, Stage::kPack), BadConfig);
  cfg.block_len = 128;
  cfg.input = "/nonexistent/input.jsonl";
  EXPECT_THROW(run_stage(cfg, Stage::kNormalize), IoFailure);
  cfg.input.clear();
  EXPECT_THROW(run_stage(cfg, Stage::kNormalize), BadConfig);
  EXPECT_FALSE(fs::exists(cfg.output));
}

TEST(Chain, FixtureRunsEndToEnd) {
  const auto dir = scratch_dir("chain");
  const auto artifacts = testing::run_fixture_chain(dir, 1, 1);
  for (const char* name : {"normalized.jsonl", "model/merges.txt", "model/vocab.txt", "encoded.jsonl",
                           "blocks.bin", "blocks.bin.masked", "stats.json", "stats.tokens.csv",
                           "stats.chars.csv", "stats.hashtag.csv"}) {
    EXPECT_TRUE(artifacts.count(name)) << name;
  }
  EXPECT_EQ(split_lines(artifacts.at("normalized.jsonl")).size(), 100u);
  const auto blocks = parse_blocks(artifacts.at("blocks.bin"));
  const auto masked = parse_masked(artifacts.at("blocks.bin.masked"));
  EXPECT_EQ(blocks.size(), masked.size());
  const auto encoded = parse_encoded(artifacts.at("encoded.jsonl"), "encoded");
  std::size_t tokens = 0;
  for (const auto& e : encoded) tokens += e.ids.size();
  std::size_t real = 0;
  for (const auto& b : blocks) real += b.n_real;
  EXPECT_EQ(real, tokens + encoded.size());
  for (const auto& [name, bytes] : artifacts) EXPECT_EQ(name.find(".tmp"), std::string::npos) << name;
}

TEST(Chain, DeterministicAcrossRunsAndWorkers) {
  const auto a = testing::run_fixture_chain(scratch_dir("det-a"), 5, 1);
  const auto b = testing::run_fixture_chain(scratch_dir("det-b"), 5, 1);
  const auto c = testing::run_fixture_chain(scratch_dir("det-c"), 5, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  const auto d = testing::run_fixture_chain(scratch_dir("det-d"), 6, 1);
  EXPECT_NE(a.at("blocks.bin.masked"), d.at("blocks.bin.masked"));
  EXPECT_EQ(a.at("blocks.bin"), d.at("blocks.bin"));
}

TEST(Chain, FailedStageLeavesNoArtifact) {
  const auto dir = scratch_dir("atomic");
  write_file_atomic(dir / "bad.jsonl", "{\"id\":\"1\",\"text\":\"ok\"}\n{not json}\n");
  PipelineConfig cfg;
  cfg.input = dir / "bad.jsonl";
  cfg.output = dir / "out.jsonl";
  EXPECT_THROW(run_stage(cfg, Stage::kNormalize), FormatError);
  EXPECT_FALSE(fs::exists(cfg.output));
  write_file_atomic(cfg.output, "previous");
  EXPECT_THROW(run_stage(cfg, Stage::kNormalize), FormatError);
  EXPECT_EQ(read_file(cfg.output), "previous");
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
  EXPECT_EQ(files, 2u);
}

TEST(Split, ManifestsAndOod) {
  const auto dir = scratch_dir("split");
  for (const char* name : {"A", "B"}) {
    std::string lines;
    for (int i = 0; i < 20; ++i) {
      lines += "{\"id\":\"" + std::string(name) + std::to_string(i) + "\",\"text\":\"t\",\"label\":\"" +
               (i % 2 ? "pos" : "neg") + "\"}\n";
    }
    write_file_atomic(dir / (std::string(name) + ".jsonl"), lines);
  }
  PipelineConfig cfg;
  cfg.manifests = {{"A", dir / "A.jsonl"}, {"B", dir / "B.jsonl"}};
  cfg.output = dir / "folds.jsonl";
  cfg.ood_output = dir / "ood.jsonl";
  cfg.held_out = "A";
  cfg.fold = 2;
  run_stage(cfg, Stage::kSplit);
  const std::string folds = read_file(cfg.output);
  EXPECT_EQ(split_lines(folds).size(), 40u);
  const std::string ood_text = read_file(cfg.ood_output);
  const auto ood = split_lines(ood_text);
  std::size_t test = 0, train = 0;
  for (const auto& l : ood) {
    if (l.find("\"role\":\"test\"") != std::string::npos) {
      ++test;
      EXPECT_NE(l.find("\"dataset\":\"A\""), std::string::npos);
    } else {
      ++train;
      EXPECT_NE(l.find("\"dataset\":\"B\""), std::string::npos);
    }
  }
  EXPECT_EQ(test, 4u);
  EXPECT_EQ(train, 16u);
  cfg.held_out = "C";
  EXPECT_THROW(run_stage(cfg, Stage::kSplit), UnknownDataset);
}

TEST(Prompt, CausalAndChatFiles) {
  const auto dir = scratch_dir("prompt");
  write_file_atomic(dir / "m.jsonl", "{\"id\":\"1\",\"text\":\"iyi\",\"label\":\"positive\"}\n");
  PipelineConfig cfg;
  cfg.input = dir / "m.jsonl";
  cfg.output = dir / "p.jsonl";
  run_stage(cfg, Stage::kPrompt);
  EXPECT_EQ(read_file(cfg.output),
            "{\"id\":\"1\",\"prompt\":\"Q: What is the sentiment of this Turkish text: \\\"iyi\\\"? A: "
            "positive\"}\n");
  cfg.chat = true;
  run_stage(cfg, Stage::kPrompt);
  EXPECT_NE(read_file(cfg.output).find("\"role\":\"assistant\",\"content\":\"positive\""), std::string::npos);
}

TEST(Cost, FromCountsAndPricingFile) {
  PipelineConfig cfg;
  cfg.n_tokens = 40'200'000'000ULL;
  cfg.n_tweets = 0;
  EXPECT_NE(run_stage(cfg, Stage::kCost).find("$40,200.00"), std::string::npos);
  const auto dir = scratch_dir("cost");
  write_file_atomic(dir / "p.conf", "input_usd_per_token = 0.000002\n");
  cfg.pricing = dir / "p.conf";
  EXPECT_NE(run_stage(cfg, Stage::kCost).find("$80,400.00"), std::string::npos);
}

TEST(Bench, SmallRun) {
  const auto dir = scratch_dir("bench");
  testing::run_fixture_chain(dir, 1, 1);
  PipelineConfig cfg;
  cfg.input = fixture_path("tweets100.jsonl");
  cfg.model_dir = dir / "model";
  cfg.n_samples = 100;
  cfg.repeats = 3;
  const auto report = nlohmann::json::parse(run_stage(cfg, Stage::kBench));
  EXPECT_EQ(report["repeats"], 3);
  EXPECT_EQ(report["n_samples"], 100);
  EXPECT_TRUE(report["outputs_identical"].get<bool>());
  cfg.n_samples = 101;
  EXPECT_THROW(run_stage(cfg, Stage::kBench), BadConfig);
}

TEST(Bench, PadAndHash) {
  std::vector<TokenId> out;
  const std::vector<TokenId> ids = {20, 21, 22};
  pad_to_block(ids, 6, out);
  EXPECT_EQ(out, (std::vector<TokenId>{kBosId, 20, 21, 22, kEosId, kPadId}));
  out.clear();
  pad_to_block(ids, 3, out);
  EXPECT_EQ(out.size(), 3u);
  EXPECT_NE(fnv1a(ids), fnv1a(std::vector<TokenId>{20, 21}));
}

TEST(ParallelMap, OrderAndErrors) {
  std::vector<int> in(1000);
  for (int i = 0; i < 1000; ++i) in[i] = i;
  const auto out = parallel_map(in, 7, [](int x) { return x * 2; });
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(out[i], 2 * i);
  EXPECT_THROW(parallel_map(in, 4, [](int x) -> int {
                 if (x == 600) throw EmptyInput("boom");
                 return x;
               }),
               EmptyInput);
}

}  // namespace
}  // namespace tweetprep
