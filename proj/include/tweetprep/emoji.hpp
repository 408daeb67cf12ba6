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

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tweetprep/unicode.hpp"

namespace tweetprep {

inline constexpr std::string_view kUnknownEmojiName = "unk_emoji";

/// Maps emoji codepoint sequences to snake_case names.
///
/// The bundled shortcode table is always present; user entries loaded from a
/// lexicon file override bundled names and may add new sequences. Instances
/// are immutable and cheap to copy (the trie is shared).
class EmojiLexicon {
 public:
  struct Match {
    std::size_t length = 0;  // codepoints consumed, 0 when nothing matched
    std::string_view name;
  };

  /// Bundled table only.
  static const EmojiLexicon& bundled();

  /// Bundled table plus `entries` (sequence, name). Names must match
  /// [a-z0-9_]+ and sequences must start with a non-ASCII, non-word,
  /// non-space codepoint; violations throw FormatError.
  static EmojiLexicon with_overrides(
      const std::vector<std::pair<std::string, std::string>>& entries);

  /// Two-column tab-separated file: sequence<TAB>name. Blank lines and lines
  /// starting with '#' are skipped.
  static EmojiLexicon load(const std::filesystem::path& path);

  /// Longest known sequence starting at `pos`.
  Match match(std::u32string_view text, std::size_t pos) const;

  /// Name from the user entries only.
  std::optional<std::string_view> user_name(std::u32string_view seq) const;

  /// Name for an exact sequence (user entries first, then bundled).
  std::optional<std::string_view> lookup(std::u32string_view seq) const;

  /// True for codepoints that begin a known sequence or fall in the
  /// pictographic planes; such codepoints never survive normalization.
  bool is_pictographic(unicode::Codepoint cp) const;

  std::size_t size() const;
  std::size_t user_size() const;

 private:
  struct Trie;
  explicit EmojiLexicon(std::shared_ptr<const Trie> trie);

  std::shared_ptr<const Trie> trie_;
};

/// Lexicon entry, then bundled table, then "unk_emoji".
std::string emoji_name(std::u32string_view seq, const EmojiLexicon& lex);
std::string emoji_name(std::string_view utf8_seq, const EmojiLexicon& lex);

}  // namespace tweetprep
