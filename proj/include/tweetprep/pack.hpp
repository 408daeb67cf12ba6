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


// Fixed-length block packing and RoBERTa-style mask sampling.
//
// Documents are concatenated with </s> after each one and sliced into
// contiguous blocks of `block_len`; only the final block is padded.
//
// Binary block file (little-endian):
//
//   "TBLK"  u8 version (=1)  u32 block_len  u32 n_blocks
//   n_blocks x { u32 n_real; u32 ids[block_len] }
//
// Masked block file: "TMSK" u8 version u32 block_len u32 n_blocks, then
// n_blocks x { u64 seed; i32 ids[block_len]; i32 labels[block_len] }.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetprep/bpe.hpp"

namespace tweetprep {

inline constexpr std::size_t kMinBlockLen = 4;
inline constexpr std::size_t kDefaultBlockLen = 128;
inline constexpr double kDefaultMaskRate = 0.15;
inline constexpr TokenId kIgnoreLabel = -100;
inline constexpr TokenId kSeparatorId = kEosId;

struct SequenceBlock {
  std::vector<TokenId> ids;  // exactly block_len entries
  std::size_t n_real = 0;

  bool operator==(const SequenceBlock&) const = default;
};

struct MaskedBlock {
  std::vector<TokenId> ids;
  std::vector<TokenId> labels;  // original id where selected, else kIgnoreLabel
  std::uint64_t seed = 0;

  bool operator==(const MaskedBlock&) const = default;
};

/// Streaming packer. Throws BadConfig if block_len < kMinBlockLen.
class BlockPacker {
 public:
  explicit BlockPacker(std::size_t block_len = kDefaultBlockLen);

  /// Appends one document plus separator; completed blocks go to `out`.
  void add(std::span<const TokenId> doc, std::vector<SequenceBlock>& out);
  /// Emits the padded tail, if any.
  void finish(std::vector<SequenceBlock>& out);

  std::size_t block_len() const { return block_len_; }
  std::size_t separators() const { return separators_; }

 private:
  std::size_t block_len_;
  std::vector<TokenId> pending_;
  std::size_t separators_ = 0;
};

std::vector<SequenceBlock> pack_blocks(std::span<const TokenSequence> stream,
                                       std::size_t block_len = kDefaultBlockLen);

/// Seed of block `block_index` under `global_seed` (SplitMix64 mix).
std::uint64_t block_seed(std::uint64_t global_seed, std::uint64_t block_index);

struct MaskingOptions {
  double rate = kDefaultMaskRate;
  std::size_t vocab_size = 0;     // random replacements draw from [n_reserved, vocab_size)
  std::size_t n_reserved = 15;    // ids below this are never selected
  bool entity_tokens_eligible = false;  // if true, ids kNumStructural..n_reserved-1 may be selected
};

/// Each eligible position is selected with probability `rate`; selections
/// become <mask> (80%), a random non-reserved id (10%) or stay (10%).
/// Throws BadConfig for rate outside [0, 1] or an empty random range.
MaskedBlock mask_block(const SequenceBlock& block, const MaskingOptions& options,
                       std::uint64_t seed);

/// ceil(total_bytes * avg_subwords_per_byte / block_len); 0 for no bytes.
std::uint64_t estimate_block_count(std::uint64_t total_bytes, double avg_subwords_per_byte,
                                   std::size_t block_len);

std::string serialize_blocks(std::span<const SequenceBlock> blocks, std::size_t block_len);
/// Throws FormatError on a bad header or truncated payload.
std::vector<SequenceBlock> parse_blocks(std::string_view bytes);

std::string serialize_masked(std::span<const MaskedBlock> blocks, std::size_t block_len);
std::vector<MaskedBlock> parse_masked(std::string_view bytes);

}  // namespace tweetprep
