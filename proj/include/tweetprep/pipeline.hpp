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


// Stage runners behind the command-line tool. Each stage reads its input
// files, does its work in memory and writes its artifacts atomically.
//
// Config files are "key = value" lines using the PipelineConfig field
// names below; flags override them and they override the defaults.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "tweetprep/corpus.hpp"
#include "tweetprep/evaluate.hpp"
#include "tweetprep/pack.hpp"

namespace tweetprep {

enum class Stage {
  kNormalize,
  kTrainTokenizer,
  kEncode,
  kPack,
  kStats,
  kSplit,
  kPrompt,
  kCost,
  kBench,
};

std::string_view stage_name(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

unsigned default_workers();

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path model_dir;
  std::filesystem::path lexicon;
  std::filesystem::path pricing;        // cost: key=value price file
  std::filesystem::path ood_output;     // split: leave-one-dataset-out records
  std::vector<std::pair<std::string, std::filesystem::path>> manifests;  // name, path

  std::size_t block_len = kDefaultBlockLen;
  double mask_rate = kDefaultMaskRate;
  bool mask_entities = false;
  std::size_t vocab_size = 100000;
  std::size_t min_tokens = kDefaultMinTokens;
  TokenCountMode count_mode = TokenCountMode::kSubword;
  std::uint64_t seed = 0;
  std::size_t batch_size = 1000;
  std::size_t repeats = 100;
  std::size_t n_samples = 1000;
  unsigned workers = default_workers();

  std::size_t k = 5;
  std::string held_out;
  std::size_t fold = 0;

  PromptTask task = PromptTask::kSentiment;
  bool chat = false;
  bool with_labels = true;

  std::optional<std::uint64_t> n_tokens;  // cost: overrides counting the input
  std::optional<std::uint64_t> n_tweets;

  /// Throws BadConfig when a field the stage needs is missing or invalid.
  void validate(Stage stage) const;
};

/// Applies config-file keys. Throws BadConfig for an unknown key or value.
void apply_config(PipelineConfig& cfg, const std::map<std::string, std::string>& kv);

/// Runs a stage; the returned text is a short summary for the user.
std::string run_stage(const PipelineConfig& cfg, Stage stage);

/// Maps `fn` over `items` on up to `workers` threads; output order matches
/// input order. The first exception thrown by any worker is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))> {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(items.size())));
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](unsigned t) {
    const std::size_t lo = items.size() * t / n;
    const std::size_t hi = items.size() * (t + 1) / n;
    try {
      for (std::size_t i = lo; i < hi; ++i) slots[i].emplace(fn(items[i]));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (n == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace tweetprep
