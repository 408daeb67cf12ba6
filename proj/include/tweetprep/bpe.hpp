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

// Word-internal byte-pair encoding with an end-of-word marker.
//
// Text is split on whitespace after reserved tokens have been cut out; each
// word becomes its codepoints with "</w>" fused onto the last one, and the
// learned merges are applied in learning order. Reserved tokens occupy the
// lowest ids:
//
//   0 <pad>   1 <unk>   2 <mask>   3 <s>   4 </s>
//   5 @user   6 <hashtag>   7 </hashtag>   8 <cashtag>   9 </cashtag>
//   10 <emoji>   11 </emoji>   12 <http>   13 </http>   14 <email>
//
// followed by the base alphabet (every character both plain and with the
// marker, in byte order) and then one id per new merge product.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tweetprep {

using TokenId = std::int32_t;

inline constexpr std::string_view kEndOfWord = "</w>";

inline constexpr std::array<std::string_view, 5> kStructuralTokens = {
    "<pad>", "<unk>", "<mask>", "<s>", "</s>"};

inline constexpr std::array<std::string_view, 9> kEntityTokens = {
    "@user",   "<hashtag>", "</hashtag>", "<cashtag>", "</cashtag>",
    "<emoji>", "</emoji>",  "<http>",     "</http>"};

// Emitted for emails; reserved after the nine entity tokens by default.
inline constexpr std::string_view kEmailToken = "<email>";

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kMaskId = 2;
inline constexpr TokenId kBosId = 3;
inline constexpr TokenId kEosId = 4;
inline constexpr std::size_t kNumStructural = kStructuralTokens.size();

/// The nine entity tokens followed by <email>.
std::vector<std::string> default_entity_tokens();

struct TokenSequence {
  std::vector<TokenId> ids;
  std::string source_id;
};

struct Merge {
  std::string left;
  std::string right;
  bool operator==(const Merge&) const = default;
};

/// Splits text the way the tokenizer sees it: reserved tokens are cut out
/// wherever they occur, the rest is split on whitespace. `on_piece` gets
/// (piece, reserved_index or -1).
void pretokenize(std::string_view text, std::span<const std::string> reserved,
                 const std::function<void(std::string_view, int)>& on_piece);

/// Initial symbols of a word: one per codepoint, marker fused onto the last.
std::vector<std::string> initial_symbols(std::string_view word);

class BpeModel {
 public:
  /// Builds a model from an explicit vocabulary (id order) and merge list.
  /// The first `n_reserved` tokens are reserved. Throws FormatError on an
  /// inconsistent pair.
  BpeModel(std::vector<std::string> tokens, std::vector<Merge> merges,
           std::size_t n_reserved);

  const std::vector<Merge>& merges() const { return merges_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t vocab_size() const { return tokens_.size(); }
  std::size_t num_reserved() const { return n_reserved_; }
  std::span<const std::string> reserved_tokens() const {
    return {tokens_.data(), n_reserved_};
  }
  bool is_reserved(TokenId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < n_reserved_;
  }
  std::optional<TokenId> id_of(std::string_view token) const;
  const std::string& token(TokenId id) const;

  TokenSequence encode(std::string_view text, std::string source_id = {}) const;
  void encode_append(std::string_view text, std::vector<TokenId>& out) const;
  /// Throws UnknownId for ids outside the vocabulary.
  std::string decode(std::span<const TokenId> ids) const;
  std::size_t count_subwords(std::string_view text) const;

  /// merges.txt: a "#tweetprep-bpe v1 reserved=N" header, then one
  /// "left right" pair per line in learning order.
  std::string merges_text() const;
  /// vocab.txt: "token<TAB>id", one per line in id order.
  std::string vocab_text() const;
  static BpeModel parse(std::string_view merges_text, std::string_view vocab_text);

  void save(const std::filesystem::path& dir) const;
  static BpeModel load(const std::filesystem::path& dir);

 private:
  void encode_word(std::string_view word, std::vector<TokenId>& out) const;

  std::vector<std::string> tokens_;
  std::vector<Merge> merges_;
  std::size_t n_reserved_;

  std::unordered_map<std::string, TokenId> index_;
  std::unordered_map<char32_t, std::pair<TokenId, TokenId>> chars_;  // plain, final
  std::unordered_map<std::uint64_t, std::int32_t> first_rank_;
  std::vector<std::int32_t> next_rank_;  // next merge of the same pair, or -1
  std::vector<TokenId> merge_result_;
  std::vector<std::pair<TokenId, TokenId>> merge_pair_;
};

struct BpeTrainOptions {
  std::size_t vocab_size = 100000;
  std::vector<std::string> special_tokens = default_entity_tokens();
  unsigned workers = 1;
};

/// Streaming trainer: feed texts with add(), then train(). Pair selection
/// is by highest frequency, ties to the lexicographically smallest
/// (left, right); training stops at vocab_size or when no pair occurs
/// twice. Output is independent of `workers`.
class BpeTrainer {
 public:
  explicit BpeTrainer(BpeTrainOptions options);

  void add(std::string_view text);
  std::size_t num_words() const { return total_words_; }

  /// Throws EmptyCorpus or VocabTooSmall.
  BpeModel train() const;

 private:
  BpeTrainOptions options_;
  std::vector<std::string> reserved_;
  std::unordered_map<std::string, std::uint64_t> word_counts_;
  std::size_t total_words_ = 0;
};

BpeModel train_bpe(std::span<const std::string> corpus, const BpeTrainOptions& options);

}  // namespace tweetprep
