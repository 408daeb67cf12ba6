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


#include "tweetprep/evaluate.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "rng.hpp"
#include "tweetprep/error.hpp"

namespace tweetprep {
namespace {

using nlohmann::json;

std::int64_t CheckedMul(std::uint64_t a, std::int64_t b) {
  std::int64_t out;
  if (a > static_cast<std::uint64_t>(INT64_MAX) ||
      __builtin_mul_overflow(static_cast<std::int64_t>(a), b, &out)) {
    throw DataError("cost overflows the representable range");
  }
  return out;
}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw DataError("cost overflows the representable range");
  return out;
}

}  // namespace

std::size_t FoldAssignment::fold(std::string_view id) const {
  const auto it = fold_of.find(std::string(id));
  if (it == fold_of.end()) throw UnknownId("instance '" + std::string(id) + "' has no fold");
  return it->second;
}

FoldAssignment stratified_kfold(const DatasetManifest& m, std::size_t k, std::uint64_t seed,
                                unsigned workers) {
  if (k < 2) throw BadConfig("k must be at least 2");
  std::unordered_map<std::string_view, std::size_t> class_of;
  for (std::size_t c = 0; c < m.label_set.size(); ++c) class_of.emplace(m.label_set[c], c);
  std::vector<std::vector<std::size_t>> members(m.label_set.size());
  for (std::size_t i = 0; i < m.instances.size(); ++i) {
    const auto it = class_of.find(m.instances[i].label);
    if (it == class_of.end()) {
      throw FormatError(m.name + ": label '" + m.instances[i].label + "' is not in the label set");
    }
    members[it->second].push_back(i);
  }
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (!members[c].empty() && members[c].size() < k) {
      throw ClassTooSmall("class '" + m.label_set[c] + "' of " + m.name + " has " +
                          std::to_string(members[c].size()) + " members, fewer than k=" +
                          std::to_string(k));
    }
  }

  // Each class shuffles on its own stream, so the split of work across
  // threads cannot change the outcome.
  auto shuffle_class = [&](std::size_t c) {
    std::mt19937_64 gen(rng::SplitMix64(rng::SplitMix64(seed) ^ c));
    auto& v = members[c];
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[rng::Below(gen, i)]);
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(members.size())));
  if (n_threads == 1) {
    for (std::size_t c = 0; c < members.size(); ++c) shuffle_class(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < members.size(); c += n_threads) shuffle_class(c);
      });
    }
    for (auto& th : pool) th.join();
  }

  FoldAssignment a;
  a.k = k;
  std::size_t offset = 0;
  for (const auto& v : members) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      a.fold_of.emplace(m.instances[v[j]].id, (offset + j) % k);
    }
    offset = (offset + v.size()) % k;
  }
  if (a.fold_of.size() != m.instances.size()) {
    throw FormatError(m.name + ": instance ids are not unique");
  }
  return a;
}

OodSplit leave_one_dataset_out(std::span<const DatasetManifest> manifests,
                               std::string_view held_out,
                               const std::map<std::string, FoldAssignment>& assignments,
                               std::size_t fold) {
  const auto held = std::find_if(manifests.begin(), manifests.end(),
                                 [&](const DatasetManifest& m) { return m.name == held_out; });
  if (held == manifests.end()) {
    throw UnknownDataset("dataset '" + std::string(held_out) + "' is not among the manifests");
  }
  OodSplit split;
  split.held_out_dataset = std::string(held_out);
  split.fold = fold;
  for (const auto& m : manifests) {
    const auto it = assignments.find(m.name);
    if (it == assignments.end()) {
      throw UnknownDataset("no fold assignment for dataset '" + m.name + "'");
    }
    const FoldAssignment& a = it->second;
    if (fold >= a.k) {
      throw BadConfig("fold " + std::to_string(fold) + " out of range for k=" +
                      std::to_string(a.k));
    }
    const bool is_held = &m == &*held;
    for (const auto& inst : m.instances) {
      const bool in_fold = a.fold(inst.id) == fold;
      if (is_held && in_fold) {
        split.test_ids.push_back({m.name, inst.id});
      } else if (!is_held && !in_fold) {
        split.train_ids.push_back({m.name, inst.id});
      }
    }
  }
  return split;
}

std::optional<PromptTask> parse_task(std::string_view name) {
  if (name == "sentiment") return PromptTask::kSentiment;
  if (name == "hate") return PromptTask::kHate;
  return std::nullopt;
}

std::string render_causal_prompt(PromptTask task, std::string_view text,
                                 std::optional<std::string_view> label) {
  std::string out = task == PromptTask::kSentiment
                        ? "Q: What is the sentiment of this Turkish text: \""
                        : "Q: Does this Turkish text contain hate speech: \"";
  out += text;
  out += "\"? A:";
  if (label) {
    out += ' ';
    out += *label;
  }
  return out;
}

ChatRecord render_chat_messages(std::string_view text, std::string_view label) {
  std::string user = "What is the sentiment of this Turkish text \"";
  user += text;
  user += "\"?";
  return ChatRecord{{{"system", std::string(kChatSystemPrompt)},
                     {"user", std::move(user)},
                     {"assistant", std::string(label)}}};
}

std::string chat_to_json(const ChatRecord& record) {
  nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
  for (const auto& m : record.messages) {
    msgs.push_back(nlohmann::ordered_json{{"role", m.role}, {"content", m.content}});
  }
  return nlohmann::ordered_json{{"messages", msgs}}.dump();
}

ChatRecord chat_from_json(std::string_view line) {
  static constexpr std::string_view kRoles[] = {"system", "user", "assistant"};
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("chat record: ") + e.what());
  }
  if (!j.is_object() || !j.contains("messages") || !j["messages"].is_array() ||
      j["messages"].size() != 3) {
    throw FormatError("chat record must hold exactly three messages");
  }
  ChatRecord r;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& m = j["messages"][i];
    if (!m.is_object() || !m.contains("role") || !m.contains("content") ||
        !m["role"].is_string() || !m["content"].is_string()) {
      throw FormatError("chat message needs string role and content");
    }
    if (m["role"].get<std::string>() != kRoles[i]) {
      throw FormatError("chat message " + std::to_string(i) + " must have role " +
                        std::string(kRoles[i]));
    }
    r.messages.push_back({m["role"].get<std::string>(), m["content"].get<std::string>()});
  }
  return r;
}

double weighted_f1(std::span<const std::string> predictions, std::span<const std::string> gold,
                   std::span<const std::string> label_set) {
  if (predictions.size() != gold.size()) {
    throw LengthMismatch(std::to_string(predictions.size()) + " predictions for " +
                         std::to_string(gold.size()) + " gold labels");
  }
  if (gold.empty()) throw EmptyInput("weighted F1 of an empty sample");

  std::vector<std::string> labels(label_set.begin(), label_set.end());
  std::unordered_map<std::string, std::size_t> idx;
  for (const auto& l : labels) idx.emplace(l, idx.size());
  const bool open = labels.empty();
  auto index_of = [&](const std::string& l) {
    auto it = idx.find(l);
    if (it != idx.end()) return it->second;
    if (!open) throw FormatError("label '" + l + "' is not in the label set");
    labels.push_back(l);
    return idx.emplace(l, idx.size()).first->second;
  };
  std::vector<std::size_t> p(predictions.size()), g(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    g[i] = index_of(gold[i]);
    p[i] = index_of(predictions[i]);
  }
  const std::size_t n = labels.size();
  std::vector<std::uint64_t> tp(n, 0), pred_n(n, 0), gold_n(n, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    ++gold_n[g[i]];
    ++pred_n[p[i]];
    if (g[i] == p[i]) ++tp[g[i]];
  }
  double score = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    if (gold_n[c] == 0 || tp[c] == 0) continue;
    const double f1 = 2.0 * static_cast<double>(tp[c]) /
                      static_cast<double>(pred_n[c] + gold_n[c]);
    score += f1 * static_cast<double>(gold_n[c]);
  }
  return score / static_cast<double>(gold.size());
}

NanoUsd parse_usd(std::string_view text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  auto digits = [](std::string_view d) {
    return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
    throw BadConfig("not a dollar amount: '" + std::string(text) + "'");
  }
  NanoUsd dollars = 0;
  if (!whole.empty()) {
    auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), dollars);
    if (ec != std::errc()) throw BadConfig("dollar amount out of range: '" + std::string(text) + "'");
  }
  NanoUsd nanos = 0;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    if (i < 9) {
      nanos = nanos * 10 + (frac[i] - '0');
    } else if (frac[i] != '0') {
      throw BadConfig("amount finer than a billionth of a dollar: '" + std::string(text) + "'");
    }
  }
  for (std::size_t i = frac.size(); i < 9; ++i) nanos *= 10;
  NanoUsd out;
  if (__builtin_mul_overflow(dollars, kNanoPerUsd, &out) || __builtin_add_overflow(out, nanos, &out)) {
    throw BadConfig("dollar amount out of range: '" + std::string(text) + "'");
  }
  return out;
}

std::string format_usd(NanoUsd amount) {
  std::string out;
  if (amount < 0) {
    out += '-';
    amount = -amount;
  }
  out += '$';
  const std::string whole = std::to_string(amount / kNanoPerUsd);
  for (std::size_t i = 0; i < whole.size(); ++i) {
    if (i > 0 && (whole.size() - i) % 3 == 0) out += ',';
    out += whole[i];
  }
  std::string frac = std::to_string(amount % kNanoPerUsd);
  frac.insert(0, 9 - frac.size(), '0');
  while (frac.size() > 2 && frac.back() == '0') frac.pop_back();
  out += '.';
  out += frac;
  return out;
}

Pricing parse_pricing(const std::map<std::string, std::string>& kv) {
  Pricing p;
  for (const auto& [key, value] : kv) {
    if (key == "input_usd_per_token") {
      p.input_per_token = parse_usd(value);
    } else if (key == "output_usd_per_token") {
      p.output_per_token = parse_usd(value);
    } else if (key == "output_tokens_per_tweet") {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                       p.output_tokens_per_tweet);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw BadConfig("output_tokens_per_tweet must be a non-negative integer");
      }
    } else {
      throw BadConfig("unknown pricing key '" + key + "'");
    }
  }
  return p;
}

CostReport estimate_cost(std::uint64_t n_tokens, std::uint64_t n_tweets, const Pricing& pricing) {
  CostReport r;
  r.n_tokens = n_tokens;
  r.n_tweets = n_tweets;
  r.input_cost = CheckedMul(n_tokens, pricing.input_per_token);
  std::uint64_t out_tokens;
  if (__builtin_mul_overflow(n_tweets, pricing.output_tokens_per_tweet, &out_tokens)) {
    throw DataError("output token count overflows");
  }
  r.output_cost = CheckedMul(out_tokens, pricing.output_per_token);
  r.total = CheckedAdd(r.input_cost, r.output_cost);
  return r;
}

std::string CostReport::to_json() const {
  nlohmann::ordered_json j{{"n_tokens", n_tokens},
                           {"n_tweets", n_tweets},
                           {"input_cost_usd", format_usd(input_cost)},
                           {"output_cost_usd", format_usd(output_cost)},
                           {"total_usd", format_usd(total)},
                           {"input_cost_nano_usd", input_cost},
                           {"output_cost_nano_usd", output_cost},
                           {"total_nano_usd", total}};
  return j.dump(2) + "\n";
}

}  // namespace tweetprep
