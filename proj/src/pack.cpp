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


#include "tweetprep/pack.hpp"

#include <cmath>
#include <cstring>

#include "tweetprep/error.hpp"
#include "rng.hpp"

namespace tweetprep {
namespace {

constexpr char kMagic[4] = {'T', 'B', 'L', 'K'};
constexpr char kMaskedMagic[4] = {'T', 'M', 'S', 'K'};
constexpr std::size_t kHeaderSize = 4 + 1 + 8;
constexpr std::uint8_t kVersion = 1;

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t GetU32(std::string_view in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return v;
}

void PutHeader(std::string& out, const char* magic, std::size_t block_len, std::size_t n) {
  out.append(magic, 4);
  out.push_back(static_cast<char>(kVersion));
  PutU32(out, static_cast<std::uint32_t>(block_len));
  PutU32(out, static_cast<std::uint32_t>(n));
}

// Returns (block_len, n_blocks) after checking magic, version and size.
std::pair<std::size_t, std::size_t> GetHeader(std::string_view bytes, const char* magic,
                                              std::size_t fixed, std::size_t per_id) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), magic, 4) != 0) {
    throw FormatError("not a " + std::string(magic, 4) + " file");
  }
  if (static_cast<std::uint8_t>(bytes[4]) != kVersion) {
    throw FormatError("unsupported block file version " +
                      std::to_string(static_cast<unsigned char>(bytes[4])));
  }
  const std::size_t block_len = GetU32(bytes, 5);
  const std::size_t n = GetU32(bytes, 9);
  const std::size_t record = fixed + per_id * block_len;
  if (bytes.size() != kHeaderSize + n * record) throw FormatError("truncated block file");
  return {block_len, n};
}

}  // namespace

BlockPacker::BlockPacker(std::size_t block_len) : block_len_(block_len) {
  if (block_len_ < kMinBlockLen) {
    throw BadConfig("block_len " + std::to_string(block_len_) + " is below the minimum of " +
                    std::to_string(kMinBlockLen));
  }
  pending_.reserve(block_len_);
}

void BlockPacker::add(std::span<const TokenId> doc, std::vector<SequenceBlock>& out) {
  auto push = [&](TokenId id) {
    pending_.push_back(id);
    if (pending_.size() == block_len_) {
      out.push_back({pending_, block_len_});
      pending_.clear();
    }
  };
  for (TokenId id : doc) push(id);
  push(kSeparatorId);
  ++separators_;
}

void BlockPacker::finish(std::vector<SequenceBlock>& out) {
  if (pending_.empty()) return;
  SequenceBlock b;
  b.n_real = pending_.size();
  b.ids = std::move(pending_);
  b.ids.resize(block_len_, kPadId);
  out.push_back(std::move(b));
  pending_.clear();
}

std::vector<SequenceBlock> pack_blocks(std::span<const TokenSequence> stream,
                                       std::size_t block_len) {
  BlockPacker packer(block_len);
  std::vector<SequenceBlock> out;
  for (const auto& seq : stream) packer.add(seq.ids, out);
  packer.finish(out);
  return out;
}

std::uint64_t block_seed(std::uint64_t global_seed, std::uint64_t block_index) {
  return rng::SplitMix64(rng::SplitMix64(global_seed) ^ block_index);
}

MaskedBlock mask_block(const SequenceBlock& block, const MaskingOptions& options,
                       std::uint64_t seed) {
  if (!(options.rate >= 0.0 && options.rate <= 1.0)) {
    throw BadConfig("mask rate must lie in [0, 1]");
  }
  MaskedBlock m;
  m.ids = block.ids;
  m.labels.assign(block.ids.size(), kIgnoreLabel);
  m.seed = seed;
  if (options.rate == 0.0) return m;

  const std::size_t lo = options.n_reserved;
  const std::size_t hi = options.vocab_size;
  if (hi <= lo) throw BadConfig("no non-reserved ids to draw random replacements from");
  const TokenId first_eligible =
      static_cast<TokenId>(options.entity_tokens_eligible ? kNumStructural : options.n_reserved);

  std::mt19937_64 gen(seed);
  const std::size_t n = std::min(block.n_real, block.ids.size());
  for (std::size_t i = 0; i < n; ++i) {
    const TokenId id = block.ids[i];
    if (id < first_eligible) continue;
    if (rng::Unit(gen) >= options.rate) continue;
    m.labels[i] = id;
    const double branch = rng::Unit(gen);
    if (branch < 0.8) {
      m.ids[i] = kMaskId;
    } else if (branch < 0.9) {
      m.ids[i] = static_cast<TokenId>(lo + rng::Below(gen, hi - lo));
    }
  }
  return m;
}

std::uint64_t estimate_block_count(std::uint64_t total_bytes, double avg_subwords_per_byte,
                                   std::size_t block_len) {
  if (block_len == 0) throw BadConfig("block_len must be positive");
  if (!(avg_subwords_per_byte >= 0.0) || !std::isfinite(avg_subwords_per_byte)) {
    throw BadConfig("avg_subwords_per_byte must be a non-negative number");
  }
  if (total_bytes == 0) return 0;
  const double blocks = static_cast<double>(total_bytes) * avg_subwords_per_byte /
                        static_cast<double>(block_len);
  // Products such as 1280 * 0.1 land a hair off the integer they denote.
  const double nearest = std::round(blocks);
  if (std::fabs(blocks - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(blocks));
}

std::string serialize_blocks(std::span<const SequenceBlock> blocks, std::size_t block_len) {
  std::string out;
  out.reserve(kHeaderSize + blocks.size() * 4 * (block_len + 1));
  PutHeader(out, kMagic, block_len, blocks.size());
  for (const auto& b : blocks) {
    if (b.ids.size() != block_len) throw FormatError("block length mismatch");
    PutU32(out, static_cast<std::uint32_t>(b.n_real));
    for (TokenId id : b.ids) PutU32(out, static_cast<std::uint32_t>(id));
  }
  return out;
}

std::vector<SequenceBlock> parse_blocks(std::string_view bytes) {
  const auto [block_len, n] = GetHeader(bytes, kMagic, 4, 4);
  std::vector<SequenceBlock> blocks(n);
  std::size_t pos = kHeaderSize;
  for (auto& b : blocks) {
    b.n_real = GetU32(bytes, pos);
    pos += 4;
    if (b.n_real > block_len) throw FormatError("n_real exceeds block length");
    b.ids.resize(block_len);
    for (auto& id : b.ids) {
      id = static_cast<TokenId>(GetU32(bytes, pos));
      pos += 4;
    }
  }
  return blocks;
}

std::string serialize_masked(std::span<const MaskedBlock> blocks, std::size_t block_len) {
  std::string out;
  out.reserve(kHeaderSize + blocks.size() * (8 + 8 * block_len));
  PutHeader(out, kMaskedMagic, block_len, blocks.size());
  for (const auto& b : blocks) {
    if (b.ids.size() != block_len || b.labels.size() != block_len) {
      throw FormatError("block length mismatch");
    }
    PutU32(out, static_cast<std::uint32_t>(b.seed & 0xFFFFFFFFu));
    PutU32(out, static_cast<std::uint32_t>(b.seed >> 32));
    for (TokenId id : b.ids) PutU32(out, static_cast<std::uint32_t>(id));
    for (TokenId id : b.labels) PutU32(out, static_cast<std::uint32_t>(id));
  }
  return out;
}

std::vector<MaskedBlock> parse_masked(std::string_view bytes) {
  const auto [block_len, n] = GetHeader(bytes, kMaskedMagic, 8, 8);
  std::vector<MaskedBlock> blocks(n);
  std::size_t pos = kHeaderSize;
  for (auto& b : blocks) {
    b.seed = GetU32(bytes, pos) | (static_cast<std::uint64_t>(GetU32(bytes, pos + 4)) << 32);
    pos += 8;
    b.ids.resize(block_len);
    b.labels.resize(block_len);
    for (auto& id : b.ids) {
      id = static_cast<TokenId>(GetU32(bytes, pos));
      pos += 4;
    }
    for (auto& id : b.labels) {
      id = static_cast<TokenId>(GetU32(bytes, pos));
      pos += 4;
    }
  }
  return blocks;
}

}  // namespace tweetprep
