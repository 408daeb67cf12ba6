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


#include "tweetprep/corpus.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tweetprep/error.hpp"
#include "tweetprep/unicode.hpp"

namespace tweetprep {
namespace {

using nlohmann::ordered_json;

ordered_json HistJson(const Histogram& h) {
  return ordered_json{{"edges", h.edges()}, {"counts", h.counts()}, {"total", h.total()}};
}

// Tag that marks one occurrence of each kind, indexed by EntityKind.
const std::vector<std::string>& OpeningTags() {
  static const std::vector<std::string> tags = {"<http>",    "<email>",   "@user",
                                                "<cashtag>", "<hashtag>", "<emoji>"};
  return tags;
}

}  // namespace

Histogram::Histogram(std::size_t max_value)
    : edges_(max_value + 2), counts_(max_value + 2, 0) {
  for (std::size_t i = 0; i < edges_.size(); ++i) edges_[i] = i;
}

std::size_t Histogram::bin_of(std::size_t value) const {
  return std::min(value, counts_.size() - 1);
}

void Histogram::add(std::size_t value, std::uint64_t weight) {
  counts_[bin_of(value)] += weight;
  total_ += weight;
}

void Histogram::merge(const Histogram& other) {
  if (edges_ != other.edges_) throw BadConfig("cannot merge histograms with different bins");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

std::string Histogram::to_csv() const {
  std::string out = "bin,count\n";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    out += std::to_string(edges_[i]);
    if (i + 1 == counts_.size()) out += '+';
    out += ',';
    out += std::to_string(counts_[i]);
    out += '\n';
  }
  return out;
}

FilterVerdict classify_pretrain(const RawTweet& tweet, const BpeModel& model,
                                std::size_t min_tokens, TokenCountMode mode) {
  if (tweet.is_retweet) return FilterVerdict::kRetweet;
  const std::size_t n = mode == TokenCountMode::kSubword
                            ? model.count_subwords(tweet.text)
                            : unicode::SplitWhitespace(tweet.text).size();
  return n < min_tokens ? FilterVerdict::kTooShort : FilterVerdict::kKeep;
}

FilterResult filter_pretrain(std::span<const RawTweet> tweets, const BpeModel& model,
                             std::size_t min_tokens, TokenCountMode mode) {
  FilterResult r;
  r.counters.n_input = tweets.size();
  for (const auto& t : tweets) {
    switch (classify_pretrain(t, model, min_tokens, mode)) {
      case FilterVerdict::kKeep:
        r.kept.push_back(t);
        break;
      case FilterVerdict::kRetweet:
        ++r.counters.n_dropped_retweets;
        break;
      case FilterVerdict::kTooShort:
        ++r.counters.n_dropped_short;
        break;
    }
  }
  return r;
}

LengthStats token_length_stats(std::span<const NormalizedText> texts, const BpeModel& model) {
  LengthStats s;
  for (const auto& t : texts) {
    s.tokens.add(model.count_subwords(t.text));
    s.chars.add(unicode::Length(t.text));
  }
  return s;
}

std::array<std::size_t, kNumEntityKinds> count_entity_tags(std::string_view text) {
  std::array<std::size_t, kNumEntityKinds> counts{};
  pretokenize(text, OpeningTags(), [&](std::string_view, int idx) {
    if (idx >= 0) ++counts[static_cast<std::size_t>(idx)];
  });
  return counts;
}

std::map<EntityKind, Histogram> special_token_stats(std::span<const NormalizedText> texts) {
  std::map<EntityKind, Histogram> out;
  for (EntityKind k : kEntityKinds) out.emplace(k, Histogram(kSpecialHistogramMax));
  for (const auto& t : texts) {
    const auto counts = count_entity_tags(t.text);
    for (EntityKind k : kEntityKinds) out.at(k).add(counts[static_cast<std::size_t>(k)]);
  }
  return out;
}

CorpusReport build_corpus_report(std::span<const NormalizedText> kept, const BpeModel& model,
                                 const FilterCounters& counters) {
  CorpusReport r;
  r.n_tweets = kept.size();
  r.lengths = token_length_stats(kept, model);
  for (const auto& t : kept) r.n_tokens += model.count_subwords(t.text);
  r.special = special_token_stats(kept);
  r.n_dropped_retweets = counters.n_dropped_retweets;
  r.n_dropped_short = counters.n_dropped_short;
  return r;
}

std::string CorpusReport::to_json() const {
  ordered_json j;
  j["n_tweets"] = n_tweets;
  j["n_tokens"] = n_tokens;
  j["n_dropped_retweets"] = n_dropped_retweets;
  j["n_dropped_short"] = n_dropped_short;
  j["token_hist"] = HistJson(lengths.tokens);
  j["char_hist"] = HistJson(lengths.chars);
  ordered_json sp = ordered_json::object();
  for (const auto& [kind, h] : special) sp[std::string(kind_name(kind))] = HistJson(h);
  j["special"] = sp;
  return j.dump() + "\n";
}

void DatasetManifest::validate() const {
  std::unordered_set<std::string_view> ids;
  std::unordered_set<std::string_view> labels(label_set.begin(), label_set.end());
  for (const auto& inst : instances) {
    if (!ids.insert(inst.id).second) {
      throw FormatError(name + ": duplicate instance id '" + inst.id + "'");
    }
    if (!labels.contains(inst.label)) {
      throw FormatError(name + ": label '" + inst.label + "' of '" + inst.id +
                        "' is not in the label set");
    }
  }
}

DatasetManifest make_manifest(std::string name, std::vector<Instance> instances,
                              std::vector<std::string> label_set) {
  DatasetManifest m{std::move(name), std::move(instances), std::move(label_set)};
  if (m.label_set.empty()) {
    std::unordered_set<std::string> seen;
    for (const auto& inst : m.instances) {
      if (seen.insert(inst.label).second) m.label_set.push_back(inst.label);
    }
  }
  m.validate();
  return m;
}

ManifestSummary summarize_manifest(const DatasetManifest& m) {
  ManifestSummary s;
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& inst : m.instances) ++counts[inst.label];
  for (const auto& label : m.label_set) {
    const auto it = counts.find(label);
    s.per_class.emplace_back(label, it == counts.end() ? 0 : it->second);
  }
  s.total = m.instances.size();
  return s;
}

const std::vector<PublishedCounts>& published_counts() {
  static const std::vector<PublishedCounts> table = {
      {"VRLSentiment", {{"positive", 5469}, {"neutral", 10146}, {"negative", 8074}}, 23689},
      {"TSATweets", {{"positive", 1552}, {"neutral", 1448}, {"negative", 3001}}, 6001},
      {"Kemik-17bin", {{"positive", 4579}, {"neutral", 5822}, {"negative", 6888}}, 17289},
      {"Kemik-3000", {{"positive", 756}, {"neutral", 957}, {"negative", 1287}}, 3000},
      {"BOUN", {{"positive", 1271}, {"neutral", 2769}, {"negative", 693}}, 4733},
      {"TSAD", {{"positive", 262166}, {"neutral", 170917}, {"negative", 56561}}, 489644},
      {"HateSpeech-train", {{"No Hate", 3493}, {"Hate", 1190}}, 4683},
      {"HateSpeech-test", {{"No Hate", 873}, {"Hate", 298}}, 1171},
  };
  return table;
}

const PublishedCounts* find_published(std::string_view name) {
  for (const auto& p : published_counts()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<std::string> compare_with_published(const DatasetManifest& m) {
  std::vector<std::string> diffs;
  const auto* pub = find_published(m.name);
  if (pub == nullptr) return diffs;
  const auto summary = summarize_manifest(m);
  std::unordered_map<std::string_view, std::uint64_t> have;
  for (const auto& [label, n] : summary.per_class) have[label] = n;
  for (const auto& [label, expected] : pub->per_class) {
    const auto it = have.find(label);
    const std::uint64_t got = it == have.end() ? 0 : it->second;
    if (got != expected) {
      diffs.push_back(m.name + ": class '" + std::string(label) + "' has " +
                      std::to_string(got) + ", published " + std::to_string(expected));
    }
  }
  if (summary.total != pub->total) {
    diffs.push_back(m.name + ": total " + std::to_string(summary.total) + ", published " +
                    std::to_string(pub->total));
  }
  return diffs;
}

}  // namespace tweetprep
