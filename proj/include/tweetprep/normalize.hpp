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

// Social-media entity detection and rewriting.
//
// Six entity kinds are recognised and rewritten into tag form:
//
//   @foo            -> @user
//   #foo            -> <hashtag> foo </hashtag>
//   $foo            -> <cashtag> foo </cashtag>
//   <emoji>         -> <emoji> name </emoji>
//   www.foo.com     -> <http> foo </http>
//   info@foo.com    -> <email>
//
// Kinds are matched leftmost-longest one at a time in precedence order URL >
// email > mention > cashtag > hashtag > emoji; each later kind scans the
// text as rewritten by the earlier ones and never touches their output.
// Offsets are codepoint indices into the source text.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetprep/emoji.hpp"

namespace tweetprep {

// Declaration order is precedence order.
enum class EntityKind : std::uint8_t {
  kUrl,
  kEmail,
  kMention,
  kCashtag,
  kHashtag,
  kEmoji,
};

inline constexpr std::size_t kNumEntityKinds = 6;
inline constexpr std::array<EntityKind, kNumEntityKinds> kEntityKinds = {
    EntityKind::kUrl,     EntityKind::kEmail,   EntityKind::kMention,
    EntityKind::kCashtag, EntityKind::kHashtag, EntityKind::kEmoji};

std::string_view kind_name(EntityKind kind);
std::optional<EntityKind> parse_kind(std::string_view name);

struct EntitySpan {
  EntityKind kind;
  std::size_t start;  // codepoint offset, inclusive
  std::size_t end;    // codepoint offset, exclusive
  // Hashtag/cashtag body, emoji name, URL domain; empty for mention/email.
  std::string payload;

  bool operator==(const EntitySpan&) const = default;
};

struct RawTweet {
  std::string id;
  std::string text;
  bool is_retweet = false;
};

struct NormalizedText {
  std::string text;
  std::vector<EntitySpan> spans;  // source positions
  std::string source_id;
  bool is_retweet = false;
};

/// Spans sorted by start, non-overlapping.
std::vector<EntitySpan> scan_entities(
    std::u32string_view text, const EmojiLexicon& lex = EmojiLexicon::bundled());
std::vector<EntitySpan> scan_entities(
    std::string_view utf8, const EmojiLexicon& lex = EmojiLexicon::bundled());

/// Candidates for a single kind, leftmost-longest, before any cross-kind
/// resolution.
std::vector<EntitySpan> scan_kind(std::u32string_view text, EntityKind kind,
                                  const EmojiLexicon& lex = EmojiLexicon::bundled());

/// Keeps candidates in precedence order, dropping any that overlap an
/// already accepted span. Input need not be sorted; output is.
std::vector<EntitySpan> resolve_overlaps(std::vector<EntitySpan> candidates);

/// Text a span is rewritten to.
std::string replacement_text(const EntitySpan& span);

/// Rewrites `spans` (sorted, non-overlapping, codepoint offsets into `utf8`)
/// and copies everything between them byte-for-byte.
std::string rewrite(std::string_view utf8, const std::vector<EntitySpan>& spans);

NormalizedText normalize_tweet(const RawTweet& tweet,
                               const EmojiLexicon& lex = EmojiLexicon::bundled());

/// Convenience for plain strings.
std::string normalize_text(std::string_view utf8,
                           const EmojiLexicon& lex = EmojiLexicon::bundled());

}  // namespace tweetprep
