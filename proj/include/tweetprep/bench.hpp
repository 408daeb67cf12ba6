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


// Throughput harness: normalize, encode and pad an in-memory sample
// repeatedly and time each pass.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tweetprep/bpe.hpp"
#include "tweetprep/emoji.hpp"
#include "tweetprep/normalize.hpp"

namespace tweetprep {

struct BenchOptions {
  std::size_t repeats = 100;
  std::size_t batch_size = 1000;
  std::size_t block_len = 128;
};

struct BenchReport {
  std::size_t n_samples = 0;
  std::size_t batch_size = 0;
  std::size_t repeats = 0;
  double mean_seconds = 0;
  double min_seconds = 0;
  double max_seconds = 0;
  double throughput = 0;                // samples per second at the mean
  std::vector<std::uint64_t> pass_hashes;  // FNV-1a over each pass's ids

  bool outputs_identical() const;
  std::string to_json() const;
};

/// <s> ids </s>, truncated to block_len and padded with <pad>.
void pad_to_block(std::span<const TokenId> ids, std::size_t block_len, std::vector<TokenId>& out);

/// FNV-1a 64 over the little-endian bytes of `ids`, continuing from `h`.
std::uint64_t fnv1a(std::span<const TokenId> ids, std::uint64_t h = 0xCBF29CE484222325ULL);

/// Throws EmptyInput for an empty sample and BadConfig for zero repeats,
/// batch size or a block_len below 2.
BenchReport bench_throughput(std::span<const RawTweet> sample, const BpeModel& model,
                             const EmojiLexicon& lex, const BenchOptions& options);

}  // namespace tweetprep
