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

#include <numeric>
#include <random>

#include "tweetprep/error.hpp"
#include "tweetprep/pack.hpp"

namespace tweetprep {
namespace {

constexpr std::size_t kVocab = 5000;

TokenSequence Doc(std::size_t n, TokenId base = 100) {
  TokenSequence s;
  for (std::size_t i = 0; i < n; ++i) s.ids.push_back(base + static_cast<TokenId>(i % 500));
  return s;
}

SequenceBlock EligibleBlock(std::size_t len) {
  SequenceBlock b;
  for (std::size_t i = 0; i < len; ++i) b.ids.push_back(static_cast<TokenId>(15 + i % 4000));
  b.n_real = len;
  return b;
}

TEST(Pack, ExactFit) {
  // Two documents of 127 tokens plus one separator each: 256 tokens.
  const std::vector<TokenSequence> docs = {Doc(127), Doc(127)};
  const auto blocks = pack_blocks(docs, 128);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].n_real, 128u);
  EXPECT_EQ(blocks[1].n_real, 128u);
  EXPECT_EQ(blocks[0].ids[127], kSeparatorId);
}

TEST(Pack, PartialTailIsPadded) {
  const std::vector<TokenSequence> docs = {Doc(129)};
  const auto blocks = pack_blocks(docs, 128);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[1].n_real, 2u);
  EXPECT_EQ(blocks[1].ids[1], kSeparatorId);
  for (std::size_t i = 2; i < 128; ++i) EXPECT_EQ(blocks[1].ids[i], kPadId);
}

TEST(Pack, EmptyStream) {
  EXPECT_TRUE(pack_blocks(std::vector<TokenSequence>{}, 128).empty());
}

TEST(Pack, RejectsShortBlocks) {
  EXPECT_THROW(BlockPacker(3), BadConfig);
  EXPECT_NO_THROW(BlockPacker(4));
}

TEST(Pack, ConservationOnRandomStreams) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = kMinBlockLen + rng() % 200;
    std::vector<TokenSequence> docs(rng() % 40);
    std::size_t total = 0;
    for (auto& d : docs) {
      d = Doc(rng() % 300);
      total += d.ids.size();
    }
    const auto blocks = pack_blocks(docs, len);
    std::size_t real = 0, partial = 0;
    for (const auto& b : blocks) {
      ASSERT_EQ(b.ids.size(), len);
      real += b.n_real;
      partial += b.n_real < len;
    }
    ASSERT_EQ(real, total + docs.size());
    ASSERT_LE(partial, 1u);
    ASSERT_EQ(blocks.size(), (total + docs.size() + len - 1) / len);
  }
}

TEST(Pack, StreamingMatchesBatch) {
  const std::vector<TokenSequence> docs = {Doc(50), Doc(0), Doc(300), Doc(7)};
  BlockPacker p(64);
  std::vector<SequenceBlock> out;
  for (const auto& d : docs) p.add(d.ids, out);
  p.finish(out);
  EXPECT_EQ(out, pack_blocks(docs, 64));
  EXPECT_EQ(p.separators(), 4u);
}

TEST(EstimateBlocks, CeilingArithmetic) {
  EXPECT_EQ(estimate_block_count(1280, 0.1, 128), 1u);
  EXPECT_EQ(estimate_block_count(1281, 0.1, 128), 2u);
  EXPECT_EQ(estimate_block_count(0, 0.7, 128), 0u);
  EXPECT_EQ(estimate_block_count(256, 1.0, 128), 2u);
}

TEST(Mask, ZeroRateIsIdentity) {
  const auto b = EligibleBlock(128);
  const auto m = mask_block(b, {0.0, kVocab}, 1);
  EXPECT_EQ(m.ids, b.ids);
  EXPECT_TRUE(std::all_of(m.labels.begin(), m.labels.end(), [](TokenId l) { return l == kIgnoreLabel; }));
}

TEST(Mask, StructuralOnlyBlockNeverSelected) {
  SequenceBlock b;
  for (int i = 0; i < 128; ++i) b.ids.push_back(static_cast<TokenId>(i % 15));
  b.n_real = 100;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = mask_block(b, {1.0, kVocab}, seed);
    EXPECT_EQ(m.ids, b.ids);
  }
}

TEST(Mask, EntityTokensOptIn) {
  SequenceBlock b;
  b.ids.assign(64, 6);
  b.n_real = 64;
  MaskingOptions opts{1.0, kVocab};
  EXPECT_EQ(mask_block(b, opts, 5).ids, b.ids);
  opts.entity_tokens_eligible = true;
  const auto m = mask_block(b, opts, 5);
  EXPECT_NE(m.ids, b.ids);
  EXPECT_TRUE(std::all_of(m.labels.begin(), m.labels.end(), [](TokenId l) { return l == 6; }));
}

TEST(Mask, DeterministicAndConsistent) {
  const auto b = EligibleBlock(128);
  const MaskingOptions opts{0.15, kVocab};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = mask_block(b, opts, block_seed(seed, 3));
    ASSERT_EQ(m, mask_block(b, opts, block_seed(seed, 3)));
    for (std::size_t i = 0; i < b.ids.size(); ++i) {
      if (m.labels[i] == kIgnoreLabel) {
        ASSERT_EQ(m.ids[i], b.ids[i]);
      } else {
        ASSERT_EQ(m.labels[i], b.ids[i]);
        ASSERT_TRUE(m.ids[i] == kMaskId || m.ids[i] >= 15);
        ASSERT_LT(m.ids[i], static_cast<TokenId>(kVocab));
      }
    }
  }
}

TEST(Mask, PadTailNeverSelected) {
  auto b = EligibleBlock(128);
  b.n_real = 10;
  const auto m = mask_block(b, {1.0, kVocab}, 9);
  for (std::size_t i = 10; i < 128; ++i) EXPECT_EQ(m.labels[i], kIgnoreLabel);
}

TEST(Mask, BranchFractionsAtFullRate) {
  const auto b = EligibleBlock(1000);
  const MaskingOptions opts{1.0, kVocab};
  std::size_t mask = 0, random = 0, keep = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto m = mask_block(b, opts, block_seed(42, seed));
    for (std::size_t i = 0; i < b.ids.size(); ++i) {
      if (m.ids[i] == kMaskId) ++mask;
      else if (m.ids[i] == b.ids[i]) ++keep;
      else ++random;
    }
  }
  const double n = static_cast<double>(mask + random + keep);
  // A random draw can coincide with the original id; that chance is 1/4985.
  EXPECT_NEAR(mask / n, 0.80, 0.02);
  EXPECT_NEAR(random / n, 0.10, 0.02);
  EXPECT_NEAR(keep / n, 0.10, 0.02);
}

TEST(Mask, BadOptions) {
  const auto b = EligibleBlock(16);
  EXPECT_THROW(mask_block(b, {1.5, kVocab}, 0), BadConfig);
  EXPECT_THROW(mask_block(b, {-0.1, kVocab}, 0), BadConfig);
  EXPECT_THROW(mask_block(b, {0.5, 15}, 0), BadConfig);
}

TEST(BlockSeed, DistinctPerBlock) {
  EXPECT_NE(block_seed(1, 0), block_seed(1, 1));
  EXPECT_NE(block_seed(1, 0), block_seed(2, 0));
  EXPECT_EQ(block_seed(7, 9), block_seed(7, 9));
}

TEST(Serialize, BlocksRoundTrip) {
  const std::vector<TokenSequence> docs = {Doc(70), Doc(3)};
  const auto blocks = pack_blocks(docs, 32);
  const std::string bytes = serialize_blocks(blocks, 32);
  EXPECT_EQ(bytes.substr(0, 4), "TBLK");
  EXPECT_EQ(bytes.size(), 4u + 1 + 4 + 4 + blocks.size() * (4 + 32 * 4));
  EXPECT_EQ(parse_blocks(bytes), blocks);
  EXPECT_THROW(parse_blocks(bytes.substr(0, bytes.size() - 1)), FormatError);
  EXPECT_THROW(parse_blocks("XXXX"), FormatError);
}

TEST(Serialize, MaskedRoundTrip) {
  std::vector<MaskedBlock> masked;
  for (std::uint64_t i = 0; i < 3; ++i) masked.push_back(mask_block(EligibleBlock(16), {0.5, kVocab}, i));
  const std::string bytes = serialize_masked(masked, 16);
  EXPECT_EQ(bytes.substr(0, 4), "TMSK");
  EXPECT_EQ(parse_masked(bytes), masked);
  EXPECT_THROW(parse_masked(serialize_blocks({}, 16)), FormatError);
}

}  // namespace
}  // namespace tweetprep
