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


// Evaluation-protocol helpers: stratified folds, leave-one-dataset-out
// splits, prompt rendering, weighted F1 and inference-cost estimates.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetprep/corpus.hpp"

namespace tweetprep {

// --- folds -----------------------------------------------------------------

struct FoldAssignment {
  std::size_t k = 0;
  std::unordered_map<std::string, std::size_t> fold_of;  // instance id -> fold

  std::size_t fold(std::string_view id) const;  // throws UnknownId
};

/// Within each class the members are shuffled (seeded Fisher-Yates) and
/// dealt round-robin, each class starting where the previous one stopped.
/// Throws BadConfig for k < 2, ClassTooSmall for a class with fewer than k
/// members.
FoldAssignment stratified_kfold(const DatasetManifest& m, std::size_t k, std::uint64_t seed,
                                unsigned workers = 1);

struct InstanceKey {
  std::string dataset;
  std::string id;
  auto operator<=>(const InstanceKey&) const = default;
};

struct OodSplit {
  std::string held_out_dataset;
  std::size_t fold = 0;
  std::vector<InstanceKey> train_ids;  // manifest order
  std::vector<InstanceKey> test_ids;
};

/// Test: the held-out dataset's fold `fold`. Train: every other dataset's
/// instances outside fold `fold`. Throws UnknownDataset when `held_out` or
/// an assignment is missing, BadConfig when fold >= k.
OodSplit leave_one_dataset_out(std::span<const DatasetManifest> manifests,
                               std::string_view held_out,
                               const std::map<std::string, FoldAssignment>& assignments,
                               std::size_t fold);

// --- prompts -----------------------------------------------------------------

enum class PromptTask { kSentiment, kHate };

std::optional<PromptTask> parse_task(std::string_view name);

/// `Q: <question>: "TEXT"? A: LABEL`; with no label the string ends at "A:".
std::string render_causal_prompt(PromptTask task, std::string_view text,
                                 std::optional<std::string_view> label = std::nullopt);

inline constexpr std::string_view kChatSystemPrompt =
    "Vrl-gpt3.5-turbo is a chatbot that can give the sentiment of Turkish texts.";

struct ChatMessage {
  std::string role;
  std::string content;
  bool operator==(const ChatMessage&) const = default;
};

struct ChatRecord {
  std::vector<ChatMessage> messages;  // system, user, assistant
  bool operator==(const ChatRecord&) const = default;
};

ChatRecord render_chat_messages(std::string_view text, std::string_view label);

/// {"messages":[{"role":..,"content":..},...]} on one line.
std::string chat_to_json(const ChatRecord& record);
/// Throws FormatError unless the roles are exactly system, user, assistant.
ChatRecord chat_from_json(std::string_view line);

// --- scoring -----------------------------------------------------------------

/// Per-class F1 weighted by gold support. Labels outside `label_set` are
/// errors; an empty label_set means "every label seen". Throws
/// LengthMismatch or EmptyInput.
double weighted_f1(std::span<const std::string> predictions, std::span<const std::string> gold,
                   std::span<const std::string> label_set = {});

// --- cost --------------------------------------------------------------------

/// Money in billionths of a dollar, so per-token prices stay exact.
using NanoUsd = std::int64_t;
inline constexpr NanoUsd kNanoPerUsd = 1'000'000'000;

struct Pricing {
  NanoUsd input_per_token = 1000;   // $0.000001
  NanoUsd output_per_token = 2000;  // $0.000002
  std::uint64_t output_tokens_per_tweet = 3;
};

/// Keys input_usd_per_token, output_usd_per_token, output_tokens_per_tweet;
/// absent keys keep their defaults. Throws BadConfig.
Pricing parse_pricing(const std::map<std::string, std::string>& kv);

/// Decimal dollars ("0.000002") to nano-dollars. Throws BadConfig.
NanoUsd parse_usd(std::string_view text);
/// "$40,200.00" style; sub-cent remainders are shown in full.
std::string format_usd(NanoUsd amount);

struct CostReport {
  std::uint64_t n_tokens = 0;
  std::uint64_t n_tweets = 0;
  NanoUsd input_cost = 0;
  NanoUsd output_cost = 0;
  NanoUsd total = 0;

  double input_usd() const { return static_cast<double>(input_cost) / kNanoPerUsd; }
  double output_usd() const { return static_cast<double>(output_cost) / kNanoPerUsd; }
  double total_usd() const { return static_cast<double>(total) / kNanoPerUsd; }
  std::string to_json() const;
  bool operator==(const CostReport&) const = default;
};

/// Throws DataError if the amounts overflow.
CostReport estimate_cost(std::uint64_t n_tokens, std::uint64_t n_tweets,
                         const Pricing& pricing = {});

}  // namespace tweetprep
