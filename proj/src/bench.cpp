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


#include "tweetprep/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <json.hpp>

#include "tweetprep/error.hpp"

namespace tweetprep {

bool BenchReport::outputs_identical() const {
  return std::adjacent_find(pass_hashes.begin(), pass_hashes.end(), std::not_equal_to<>()) ==
         pass_hashes.end();
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j{{"n_samples", n_samples},
                           {"batch_size", batch_size},
                           {"repeats", repeats},
                           {"mean_seconds", mean_seconds},
                           {"min_seconds", min_seconds},
                           {"max_seconds", max_seconds},
                           {"throughput", throughput},
                           {"outputs_identical", outputs_identical()},
                           {"hash", pass_hashes.empty() ? 0 : pass_hashes.front()}};
  return j.dump(2) + "\n";
}

void pad_to_block(std::span<const TokenId> ids, std::size_t block_len, std::vector<TokenId>& out) {
  const std::size_t body = std::min(ids.size(), block_len - 2);
  out.push_back(kBosId);
  out.insert(out.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(body));
  out.push_back(kEosId);
  out.resize(out.size() + (block_len - 2 - body), kPadId);
}

std::uint64_t fnv1a(std::span<const TokenId> ids, std::uint64_t h) {
  for (TokenId id : ids) {
    auto v = static_cast<std::uint32_t>(id);
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xFFu;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

BenchReport bench_throughput(std::span<const RawTweet> sample, const BpeModel& model,
                             const EmojiLexicon& lex, const BenchOptions& options) {
  if (sample.empty()) throw EmptyInput("benchmark sample is empty");
  if (options.repeats == 0) throw BadConfig("repeats must be positive");
  if (options.batch_size == 0) throw BadConfig("batch_size must be positive");
  if (options.block_len < 2) throw BadConfig("block_len must be at least 2");

  BenchReport r;
  r.n_samples = sample.size();
  r.batch_size = options.batch_size;
  r.repeats = options.repeats;

  std::vector<double> times;
  times.reserve(options.repeats);
  std::vector<TokenId> ids;
  std::vector<TokenId> batch;
  batch.reserve(options.batch_size * options.block_len);
  using clock = std::chrono::steady_clock;
  for (std::size_t pass = 0; pass < options.repeats; ++pass) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    const auto t0 = clock::now();
    for (std::size_t lo = 0; lo < sample.size(); lo += options.batch_size) {
      const std::size_t hi = std::min(sample.size(), lo + options.batch_size);
      batch.clear();
      for (std::size_t i = lo; i < hi; ++i) {
        const NormalizedText n = normalize_tweet(sample[i], lex);
        ids.clear();
        model.encode_append(n.text, ids);
        pad_to_block(ids, options.block_len, batch);
      }
      h = fnv1a(batch, h);
    }
    const auto t1 = clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    r.pass_hashes.push_back(h);
  }
  r.min_seconds = *std::min_element(times.begin(), times.end());
  r.max_seconds = *std::max_element(times.begin(), times.end());
  r.mean_seconds = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
  // Keep min <= mean <= max despite summation rounding.
  r.mean_seconds = std::clamp(r.mean_seconds, r.min_seconds, r.max_seconds);
  r.throughput = r.mean_seconds > 0 ? static_cast<double>(r.n_samples) / r.mean_seconds : 0.0;
  return r;
}

}  // namespace tweetprep
