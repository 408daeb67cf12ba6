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

#include <random>
#include <set>

#include "oracles.hpp"
#include "tweetprep/error.hpp"
#include "tweetprep/evaluate.hpp"

namespace tweetprep {
namespace {

DatasetManifest Balanced(std::string name, std::size_t n, std::vector<std::string> labels) {
  std::vector<Instance> inst;
  for (std::size_t i = 0; i < n; ++i) inst.push_back({name + "-" + std::to_string(i), "t", labels[i % labels.size()]});
  return make_manifest(std::move(name), std::move(inst), labels);
}

TEST(Folds, ExactDivisibility) {
  const auto m = Balanced("d", 10, {"a", "b"});
  const auto f = stratified_kfold(m, 5, 1);
  std::map<std::pair<std::size_t, std::string>, int> cells;
  for (const auto& inst : m.instances) ++cells[{f.fold(inst.id), inst.label}];
  EXPECT_EQ(cells.size(), 10u);
  for (const auto& [cell, n] : cells) EXPECT_EQ(n, 1);
}

TEST(Folds, ProportionalityBoundAcrossSeeds) {
  std::vector<Instance> inst;
  for (int i = 0; i < 5854; ++i) inst.push_back({std::to_string(i), "t", i < 4683 ? "c0" : "c1"});
  const auto m = make_manifest("hate", std::move(inst));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = stratified_kfold(m, 5, seed);
    std::vector<std::array<double, 2>> cnt(5, {0, 0});
    for (const auto& x : m.instances) cnt[f.fold(x.id)][x.label == "c1"] += 1;
    for (const auto& c : cnt) {
      EXPECT_LT(std::abs(c[0] - 4683.0 / 5), 1.0);
      EXPECT_LT(std::abs(c[1] - 1171.0 / 5), 1.0);
    }
  }
}

TEST(Folds, SeedPermutesButDeterministic) {
  const auto m = Balanced("d", 200, {"x", "y", "z"});
  const auto a = stratified_kfold(m, 5, 7);
  EXPECT_EQ(a.fold_of, stratified_kfold(m, 5, 7).fold_of);
  EXPECT_EQ(a.fold_of, stratified_kfold(m, 5, 7, 4).fold_of);
  EXPECT_NE(a.fold_of, stratified_kfold(m, 5, 8).fold_of);
  EXPECT_EQ(a.fold_of.size(), 200u);
}

TEST(Folds, Errors) {
  const auto m = Balanced("d", 9, {"a", "b"});
  EXPECT_THROW(stratified_kfold(m, 5, 0), ClassTooSmall);
  EXPECT_THROW(stratified_kfold(m, 1, 0), BadConfig);
  EXPECT_THROW(stratified_kfold(m, 2, 0).fold("missing"), UnknownId);
}

TEST(Ood, HandEnumeratedPartition) {
  const std::vector<DatasetManifest> ms = {Balanced("A", 10, {"p", "n"}), Balanced("B", 10, {"p", "n"})};
  std::map<std::string, FoldAssignment> folds;
  for (const auto& m : ms) folds[m.name] = stratified_kfold(m, 5, 3);
  const auto s = leave_one_dataset_out(ms, "A", folds, 0);
  EXPECT_EQ(s.test_ids.size(), 2u);
  EXPECT_EQ(s.train_ids.size(), 8u);
  for (const auto& k : s.test_ids) {
    EXPECT_EQ(k.dataset, "A");
    EXPECT_EQ(folds["A"].fold(k.id), 0u);
  }
  for (const auto& k : s.train_ids) {
    EXPECT_EQ(k.dataset, "B");
    EXPECT_NE(folds["B"].fold(k.id), 0u);
  }
}

TEST(Ood, Errors) {
  const std::vector<DatasetManifest> ms = {Balanced("A", 10, {"p"})};
  std::map<std::string, FoldAssignment> folds = {{"A", stratified_kfold(ms[0], 5, 1)}};
  EXPECT_THROW(leave_one_dataset_out(ms, "Z", folds, 0), UnknownDataset);
  EXPECT_THROW(leave_one_dataset_out(ms, "A", folds, 5), BadConfig);
  EXPECT_THROW(leave_one_dataset_out(ms, "A", {}, 0), UnknownDataset);
}

TEST(Prompt, CausalTemplates) {
  EXPECT_EQ(render_causal_prompt(PromptTask::kSentiment, "iyi", "positive"),
            "Q: What is the sentiment of this Turkish text: \"iyi\"? A: positive");
  EXPECT_EQ(render_causal_prompt(PromptTask::kHate, "x", "no"),
            "Q: Does this Turkish text contain hate speech: \"x\"? A: no");
  const auto inference = render_causal_prompt(PromptTask::kSentiment, "iyi");
  EXPECT_TRUE(inference.ends_with("A:"));
  EXPECT_EQ(parse_task("hate"), PromptTask::kHate);
  EXPECT_FALSE(parse_task("other"));
}

TEST(Prompt, ChatRecord) {
  const auto r = render_chat_messages("iyi", "positive");
  ASSERT_EQ(r.messages.size(), 3u);
  EXPECT_EQ(r.messages[0], (ChatMessage{"system", std::string(kChatSystemPrompt)}));
  EXPECT_EQ(r.messages[1], (ChatMessage{"user", "What is the sentiment of this Turkish text \"iyi\"?"}));
  EXPECT_EQ(r.messages[2], (ChatMessage{"assistant", "positive"}));
  const std::string line = chat_to_json(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(chat_from_json(line), r);
  EXPECT_THROW(chat_from_json(R"({"messages":[{"role":"user","content":"x"}]})"), FormatError);
}

TEST(F1, KnownValues) {
  const std::vector<std::string> gold = {"a", "a", "b", "b"};
  EXPECT_DOUBLE_EQ(weighted_f1(gold, gold), 1.0);
  const std::vector<std::string> all_a = {"a", "a", "a", "a"};
  // F1(a) = 2 * 0.5 * 1 / 1.5 = 2/3, F1(b) = 0.
  EXPECT_NEAR(weighted_f1(all_a, gold), 0.5 * 2.0 / 3.0, 1e-12);
  EXPECT_THROW(weighted_f1(std::vector<std::string>{"a"}, gold), LengthMismatch);
  EXPECT_THROW(weighted_f1(std::vector<std::string>{}, std::vector<std::string>{}), EmptyInput);
}

TEST(F1, MatchesConfusionMatrixOracle) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> labels = {"pos", "neu", "neg"};
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    std::vector<std::string> pred, gold;
    for (std::size_t i = 0; i < n; ++i) {
      pred.push_back(labels[rng() % 3]);
      gold.push_back(labels[rng() % 3]);
    }
    ASSERT_NEAR(weighted_f1(pred, gold, labels), testing::oracle_weighted_f1(pred, gold, labels), 1e-12);
  }
}

TEST(Cost, Formula) {
  EXPECT_EQ(estimate_cost(0, 0), CostReport{});
  EXPECT_EQ(format_usd(estimate_cost(0, 1000).output_cost), "$0.006");
  const auto r = estimate_cost(40'200'000'000ULL, 336'690'250ULL);
  EXPECT_EQ(format_usd(r.input_cost), "$40,200.00");
  EXPECT_EQ(r.total, r.input_cost + r.output_cost);
  EXPECT_EQ(format_usd(r.total), "$42,220.1415");
}

TEST(Cost, Linearity) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t a = rng() % 1'000'000'000'000ULL, b = rng() % 1'000'000'000'000ULL;
    const std::uint64_t c = rng() % 1'000'000'000ULL, d = rng() % 1'000'000'000ULL;
    const auto ab = estimate_cost(a + b, c + d);
    const auto x = estimate_cost(a, c), y = estimate_cost(b, d);
    ASSERT_EQ(ab.input_cost, x.input_cost + y.input_cost);
    ASSERT_EQ(ab.output_cost, x.output_cost + y.output_cost);
    ASSERT_EQ(ab.total, x.total + y.total);
  }
}

TEST(Cost, PricingParsing) {
  EXPECT_EQ(parse_usd("0.000001"), 1000);
  EXPECT_EQ(parse_usd("2"), 2 * kNanoPerUsd);
  EXPECT_THROW(parse_usd("0.0000000001"), BadConfig);
  EXPECT_THROW(parse_usd("abc"), BadConfig);
  const auto p = parse_pricing({{"output_tokens_per_tweet", "5"}});
  EXPECT_EQ(p.output_tokens_per_tweet, 5u);
  EXPECT_EQ(p.input_per_token, 1000);
  EXPECT_THROW(parse_pricing({{"bogus", "1"}}), BadConfig);
  EXPECT_THROW(estimate_cost(~0ULL, 0), DataError);
}

}  // namespace
}  // namespace tweetprep
