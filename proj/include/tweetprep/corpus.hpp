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


// Pre-training filters, corpus statistics and labelled-dataset manifests.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetprep/bpe.hpp"
#include "tweetprep/normalize.hpp"

namespace tweetprep {

inline constexpr std::size_t kDefaultMinTokens = 10;
inline constexpr std::size_t kTokenHistogramMax = 128;
inline constexpr std::size_t kCharHistogramMax = 512;
inline constexpr std::size_t kSpecialHistogramMax = 32;

/// Unit-width integer bins 0..max plus one overflow bin for values > max.
/// Bin i covers [edges[i], edges[i+1]); the last bin is open-ended.
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::size_t max_value);

  void add(std::size_t value, std::uint64_t weight = 1);
  /// Throws BadConfig when the edges differ.
  void merge(const Histogram& other);

  std::size_t bin_of(std::size_t value) const;
  const std::vector<std::size_t>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t overflow() const { return counts_.back(); }

  /// "bin,count" lines; the overflow bin is written as "<max+1>+".
  std::string to_csv() const;

  bool operator==(const Histogram&) const = default;

 private:
  std::vector<std::size_t> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

enum class TokenCountMode { kSubword, kWhitespace };

struct FilterCounters {
  std::uint64_t n_input = 0;
  std::uint64_t n_dropped_retweets = 0;
  std::uint64_t n_dropped_short = 0;
  std::uint64_t kept() const { return n_input - n_dropped_retweets - n_dropped_short; }
};

enum class FilterVerdict { kKeep, kRetweet, kTooShort };

/// Retweets go first; the rest must reach `min_tokens` (inclusive).
FilterVerdict classify_pretrain(const RawTweet& tweet, const BpeModel& model,
                                std::size_t min_tokens,
                                TokenCountMode mode = TokenCountMode::kSubword);

struct FilterResult {
  std::vector<RawTweet> kept;
  FilterCounters counters;
};

FilterResult filter_pretrain(std::span<const RawTweet> tweets, const BpeModel& model,
                             std::size_t min_tokens = kDefaultMinTokens,
                             TokenCountMode mode = TokenCountMode::kSubword);

struct LengthStats {
  Histogram tokens{kTokenHistogramMax};
  Histogram chars{kCharHistogramMax};
};

/// Per-tweet subword and codepoint counts.
LengthStats token_length_stats(std::span<const NormalizedText> texts, const BpeModel& model);

/// Occurrences per tweet of each entity kind, counted from the emitted tags
/// (`@user`, opening tags, `<email>`).
std::map<EntityKind, Histogram> special_token_stats(std::span<const NormalizedText> texts);

/// Counts per kind for one normalized string.
std::array<std::size_t, kNumEntityKinds> count_entity_tags(std::string_view text);

struct CorpusReport {
  std::uint64_t n_tweets = 0;
  std::uint64_t n_tokens = 0;
  LengthStats lengths;
  std::map<EntityKind, Histogram> special;
  std::uint64_t n_dropped_retweets = 0;
  std::uint64_t n_dropped_short = 0;

  /// JSON with keys n_tweets, n_tokens, n_dropped_retweets, n_dropped_short,
  /// token_hist, char_hist, special (kind -> hist); hists as
  /// {"edges": [...], "counts": [...], "total": n}.
  std::string to_json() const;
};

CorpusReport build_corpus_report(std::span<const NormalizedText> kept, const BpeModel& model,
                                 const FilterCounters& counters = {});

struct Instance {
  std::string id;
  std::string text;
  std::string label;
};

struct DatasetManifest {
  std::string name;
  std::vector<Instance> instances;
  std::vector<std::string> label_set;

  /// Throws FormatError on duplicate ids or labels outside label_set.
  void validate() const;
};

/// Builds a manifest; an empty label_set is filled in order of first use.
DatasetManifest make_manifest(std::string name, std::vector<Instance> instances,
                              std::vector<std::string> label_set = {});

struct ManifestSummary {
  std::vector<std::pair<std::string, std::uint64_t>> per_class;  // label_set order
  std::uint64_t total = 0;
};

ManifestSummary summarize_manifest(const DatasetManifest& m);

struct PublishedCounts {
  std::string_view name;
  std::vector<std::pair<std::string_view, std::uint64_t>> per_class;
  std::uint64_t total;
};

/// Class counts of the published downstream datasets.
const std::vector<PublishedCounts>& published_counts();
const PublishedCounts* find_published(std::string_view name);

/// Human-readable differences from the published counts; empty when they
/// agree or when no published figures exist for the name.
std::vector<std::string> compare_with_published(const DatasetManifest& m);

}  // namespace tweetprep
