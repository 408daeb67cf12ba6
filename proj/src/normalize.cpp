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

#include "tweetprep/normalize.hpp"

#include <algorithm>

#include "tweetprep/domain.hpp"

namespace tweetprep {

using unicode::Codepoint;
using unicode::IsAsciiAlpha;
using unicode::IsAsciiDigit;
using unicode::IsDigit;
using unicode::IsLetter;
using unicode::IsMark;
using unicode::IsSpace;
using unicode::IsWordChar;

namespace {

constexpr std::u32string_view kUserToken = U"user";

bool OneOf(Codepoint cp, std::u32string_view set) {
  return set.find(cp) != std::u32string_view::npos;
}

bool IsAsciiAlnum(Codepoint cp) { return IsAsciiAlpha(cp) || IsAsciiDigit(cp); }

bool IsHostChar(Codepoint cp) {
  return IsAsciiAlnum(cp) || cp == '.' || cp == '-';
}

bool IsAuthorityChar(Codepoint cp) {
  return IsLetter(cp) || IsDigit(cp) || OneOf(cp, U".-_@:%+~");
}

bool IsPathChar(Codepoint cp) {
  if (IsSpace(cp)) return false;
  if (cp < 0x80) return cp > 0x20 && cp != 0x7F && !OneOf(cp, U"<>\"{}|\\^`");
  return IsLetter(cp) || IsDigit(cp) || IsMark(cp);
}

bool IsLocalChar(Codepoint cp) { return IsWordChar(cp) || OneOf(cp, U".%+-"); }

bool IsDomainChar(Codepoint cp) { return IsWordChar(cp) || cp == '-'; }

bool IsHashtagBody(Codepoint cp) { return IsLetter(cp) || IsDigit(cp) || IsMark(cp); }

std::string Utf8(std::u32string_view t, std::size_t b, std::size_t e) {
  return unicode::Encode(t.substr(b, e - b));
}

bool StartsWithCi(std::u32string_view t, std::size_t i, std::u32string_view lower) {
  if (t.size() - i < lower.size()) return false;
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (unicode::AsciiLower(t[i + k]) != lower[k]) return false;
  }
  return true;
}

// Consumes a path/query/fragment starting at `j` and trims trailing
// sentence punctuation.
std::size_t PathEnd(std::u32string_view t, std::size_t j) {
  std::size_t k = j;
  while (k < t.size() && IsPathChar(t[k])) ++k;
  while (k > j + 1 && OneOf(t[k - 1], U".,:;!?'*)]")) --k;
  if (k == j + 1 && OneOf(t[j], U"?#")) return j;
  return k;
}

std::size_t CountLabels(std::string_view host) {
  return static_cast<std::size_t>(std::count(host.begin(), host.end(), '.')) + 1;
}

bool HasWwwPrefix(std::string_view host) {
  return host.size() > 4 && (host[0] | 0x20) == 'w' && (host[1] | 0x20) == 'w' &&
         (host[2] | 0x20) == 'w' && host[3] == '.';
}

void ScanUrls(std::u32string_view t, std::vector<EntitySpan>& out);

// Falls back to the host with leading "www." labels dropped; if that still
// contains something URL-shaped, the payload of the first such match is
// used instead, so a payload is never matched as a URL again.
std::string DomainPayload(const std::string& host) {
  if (auto label = registrable_label(host)) return *std::move(label);
  std::string_view h = host;
  while (HasWwwPrefix(h) && CountLabels(h) >= 3) h.remove_prefix(4);
  std::u32string padded = U" ";
  padded += unicode::Decode(h);
  padded += U' ';
  std::vector<EntitySpan> inner;
  ScanUrls(padded, inner);
  if (!inner.empty()) return std::move(inner.front().payload);
  return std::string(h);
}

struct Candidate {
  std::size_t end = 0;
  std::string payload;
};

std::optional<Candidate> MatchSchemeUrl(std::u32string_view t, std::size_t i) {
  if (i > 0 && IsWordChar(t[i - 1])) return std::nullopt;
  std::size_t a;
  if (StartsWithCi(t, i, U"https://")) {
    a = i + 8;
  } else if (StartsWithCi(t, i, U"http://")) {
    a = i + 7;
  } else {
    return std::nullopt;
  }
  std::size_t j = a;
  while (j < t.size() && IsAuthorityChar(t[j])) ++j;
  std::size_t end;
  if (j < t.size() && OneOf(t[j], U"/?#")) {
    end = PathEnd(t, j);
  } else {
    end = j;
    while (end > a && OneOf(t[end - 1], U".:")) --end;
  }
  // host: after the last '@' of the authority, before the port.
  std::size_t auth_end = std::min(j, end);
  std::size_t h = a;
  for (std::size_t k = a; k < auth_end; ++k) {
    if (t[k] == '@') h = k + 1;
  }
  std::size_t he = h;
  while (he < auth_end && t[he] != ':') ++he;
  while (he > h && t[he - 1] == '.') --he;
  if (he == h) return std::nullopt;
  return Candidate{end, DomainPayload(Utf8(t, h, he))};
}

std::optional<Candidate> MatchBareUrl(std::u32string_view t, std::size_t i) {
  if (!IsAsciiAlnum(t[i])) return std::nullopt;
  if (i > 0) {
    const Codepoint p = t[i - 1];
    if (IsWordChar(p) || OneOf(p, U"@#$%&+-./:=~")) return std::nullopt;
  }
  std::size_t r = i;
  while (r < t.size() && IsHostChar(t[r])) ++r;
  if (r < t.size() && (IsWordChar(t[r]) || t[r] == '@')) return std::nullopt;
  std::size_t h = r;
  while (h > i && t[h - 1] == '.') --h;
  if (std::find(t.begin() + i, t.begin() + h, U'.') == t.begin() + h) return std::nullopt;

  const std::string host = Utf8(t, i, h);
  std::size_t n_labels = 0;
  std::size_t start = 0;
  while (true) {
    const auto dot = host.find('.', start);
    const std::string_view label =
        std::string_view(host).substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (label.empty() || label.front() == '-' || label.back() == '-') return std::nullopt;
    ++n_labels;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (n_labels < 2) return std::nullopt;

  const bool www = n_labels >= 3 && (host[0] == 'w' || host[0] == 'W') &&
                   StartsWithCi(t, i, U"www.");
  std::optional<std::string> label = registrable_label(host);
  if (!www) {
    const std::string_view tld = std::string_view(host).substr(host.rfind('.') + 1);
    if (!is_known_tld(tld) || !label) return std::nullopt;
  }
  std::size_t end = h;
  if (h == r && r < t.size() && OneOf(t[r], U"/?#")) end = PathEnd(t, r);
  return Candidate{end, DomainPayload(host)};
}

void ScanUrls(std::u32string_view t, std::vector<EntitySpan>& out) {
  std::size_t i = 0;
  while (i < t.size()) {
    const Codepoint c = t[i];
    if (!IsAsciiAlnum(c)) {
      ++i;
      continue;
    }
    std::optional<Candidate> best;
    if (c == 'h' || c == 'H') best = MatchSchemeUrl(t, i);
    if (auto bare = MatchBareUrl(t, i); bare && (!best || bare->end > best->end)) {
      best = std::move(bare);
    }
    if (best) {
      out.push_back({EntityKind::kUrl, i, best->end, std::move(best->payload)});
      i = best->end;
    } else {
      ++i;
    }
  }
}

// Longest `([D]+\.)+[letters]{2,}` prefix starting at `d` that ends on a
// label boundary; 0 if none.
std::size_t EmailDomainEnd(std::u32string_view t, std::size_t d) {
  std::size_t best = 0;
  std::size_t pos = d;
  bool after_dot = false;
  while (true) {
    const std::size_t label = pos;
    while (pos < t.size() && IsDomainChar(t[pos])) ++pos;
    if (pos == label) break;
    if (after_dot) {
      std::size_t m = label;
      while (m < pos && IsLetter(t[m])) ++m;
      if (m == pos && m - label >= 2) best = m;
    }
    if (pos < t.size() && t[pos] == '.') {
      ++pos;
      after_dot = true;
      continue;
    }
    break;
  }
  return best;
}

void ScanEmails(std::u32string_view t, std::vector<EntitySpan>& out) {
  std::size_t cursor = 0;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a] != '@') continue;
    std::size_t s = a;
    while (s > cursor && IsLocalChar(t[s - 1])) --s;
    if (s == a) continue;
    const std::size_t e = EmailDomainEnd(t, a + 1);
    if (e == 0) continue;
    out.push_back({EntityKind::kEmail, s, e, {}});
    cursor = e;
    a = e - 1;
  }
}

void ScanMentions(std::u32string_view t, std::vector<EntitySpan>& out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '@') continue;
    std::size_t j = i + 1;
    while (j < t.size() && IsWordChar(t[j])) ++j;
    if (j == i + 1) continue;
    if (t.substr(i + 1, j - i - 1) != kUserToken) {
      out.push_back({EntityKind::kMention, i, j, {}});
    }
    i = j - 1;
  }
}

void ScanCashtags(std::u32string_view t, std::vector<EntitySpan>& out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '$') continue;
    std::size_t j = i + 1;
    while (j < t.size() && IsAsciiAlpha(t[j])) ++j;
    const std::size_t len = j - i - 1;
    if (len >= 1 && len <= 6 && (j == t.size() || !IsWordChar(t[j]))) {
      out.push_back({EntityKind::kCashtag, i, j, Utf8(t, i + 1, j)});
    }
    if (j > i + 1) i = j - 1;
  }
}

void ScanHashtags(std::u32string_view t, std::vector<EntitySpan>& out) {
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] != '#') continue;
    const Codepoint first = t[i + 1];
    if (!IsLetter(first) && !IsDigit(first)) continue;
    std::size_t j = i + 2;
    while (j < t.size() && IsHashtagBody(t[j])) ++j;
    out.push_back({EntityKind::kHashtag, i, j, Utf8(t, i + 1, j)});
    i = j - 1;
  }
}

bool IsKeycapBase(Codepoint cp) { return cp == '#' || cp == '*' || IsAsciiDigit(cp); }

void ScanEmoji(std::u32string_view t, const EmojiLexicon& lex,
               std::vector<EntitySpan>& out) {
  std::size_t i = 0;
  while (i < t.size()) {
    const Codepoint c = t[i];
    const bool keycap = IsKeycapBase(c);
    if (!keycap && !lex.is_pictographic(c)) {
      ++i;
      continue;
    }
    // A sequence starting with a word character must not continue a word.
    if (IsWordChar(c) && i > 0 && IsWordChar(t[i - 1])) {
      ++i;
      continue;
    }
    const auto m = lex.match(t, i);
    if (m.length > 0) {
      out.push_back({EntityKind::kEmoji, i, i + m.length, std::string(m.name)});
      i += m.length;
    } else if (!keycap) {
      std::size_t len = 1;
      if (i + 1 < t.size() && t[i + 1] == 0xFE0F) ++len;
      out.push_back({EntityKind::kEmoji, i, i + len, std::string(kUnknownEmojiName)});
      i += len;
    } else {
      ++i;
    }
  }
}

}  // namespace

std::string_view kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::kUrl: return "url";
    case EntityKind::kEmail: return "email";
    case EntityKind::kMention: return "mention";
    case EntityKind::kCashtag: return "cashtag";
    case EntityKind::kHashtag: return "hashtag";
    case EntityKind::kEmoji: return "emoji";
  }
  return "unknown";
}

std::optional<EntityKind> parse_kind(std::string_view name) {
  for (EntityKind k : kEntityKinds) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<EntitySpan> scan_kind(std::u32string_view text, EntityKind kind,
                                  const EmojiLexicon& lex) {
  std::vector<EntitySpan> out;
  switch (kind) {
    case EntityKind::kUrl: ScanUrls(text, out); break;
    case EntityKind::kEmail: ScanEmails(text, out); break;
    case EntityKind::kMention: ScanMentions(text, out); break;
    case EntityKind::kCashtag: ScanCashtags(text, out); break;
    case EntityKind::kHashtag: ScanHashtags(text, out); break;
    case EntityKind::kEmoji: ScanEmoji(text, lex, out); break;
  }
  return out;
}

std::vector<EntitySpan> resolve_overlaps(std::vector<EntitySpan> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const EntitySpan& a, const EntitySpan& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.start < b.start;
                   });
  std::size_t extent = 0;
  for (const auto& c : candidates) extent = std::max(extent, c.end);
  std::vector<bool> covered(extent, false);
  std::vector<EntitySpan> accepted;
  accepted.reserve(candidates.size());
  for (auto& c : candidates) {
    bool clash = false;
    for (std::size_t k = c.start; k < c.end && !clash; ++k) clash = covered[k];
    if (clash) continue;
    for (std::size_t k = c.start; k < c.end; ++k) covered[k] = true;
    accepted.push_back(std::move(c));
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  return accepted;
}

// Kinds run in precedence order over a view of the text in which the spans
// accepted so far already stand as their replacement text, so every kind
// sees the context the output will have. A candidate touching replacement
// text is dropped.
std::vector<EntitySpan> scan_entities(std::u32string_view text,
                                      const EmojiLexicon& lex) {
  std::u32string view(text);
  std::vector<std::int64_t> origin(text.size());  // source offset, -1 in replacements
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = static_cast<std::int64_t>(i);
  std::vector<EntitySpan> accepted;
  std::vector<EntitySpan> found;
  std::u32string next;
  std::vector<std::int64_t> next_origin;
  for (EntityKind kind : kEntityKinds) {
    found.clear();
    switch (kind) {
      case EntityKind::kUrl: ScanUrls(view, found); break;
      case EntityKind::kEmail: ScanEmails(view, found); break;
      case EntityKind::kMention: ScanMentions(view, found); break;
      case EntityKind::kCashtag: ScanCashtags(view, found); break;
      case EntityKind::kHashtag: ScanHashtags(view, found); break;
      case EntityKind::kEmoji: ScanEmoji(view, lex, found); break;
    }
    if (found.empty()) continue;
    next.clear();
    next_origin.clear();
    std::size_t cursor = 0;
    for (auto& c : found) {
      if (std::any_of(origin.begin() + static_cast<std::ptrdiff_t>(c.start),
                      origin.begin() + static_cast<std::ptrdiff_t>(c.end),
                      [](std::int64_t o) { return o < 0; })) {
        continue;
      }
      next.append(view, cursor, c.start - cursor);
      next_origin.insert(next_origin.end(), origin.begin() + static_cast<std::ptrdiff_t>(cursor),
                         origin.begin() + static_cast<std::ptrdiff_t>(c.start));
      const std::u32string rep = unicode::Decode(replacement_text(c));
      next += rep;
      next_origin.insert(next_origin.end(), rep.size(), -1);
      const auto src_start = static_cast<std::size_t>(origin[c.start]);
      const auto src_end = static_cast<std::size_t>(origin[c.end - 1]) + 1;
      cursor = c.end;
      c.start = src_start;
      c.end = src_end;
      accepted.push_back(std::move(c));
    }
    next.append(view, cursor);
    next_origin.insert(next_origin.end(), origin.begin() + static_cast<std::ptrdiff_t>(cursor),
                       origin.end());
    view.swap(next);
    origin.swap(next_origin);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  return accepted;
}

std::vector<EntitySpan> scan_entities(std::string_view utf8, const EmojiLexicon& lex) {
  return scan_entities(std::u32string_view(unicode::Decode(utf8)), lex);
}

std::string replacement_text(const EntitySpan& span) {
  auto wrap = [&](std::string_view tag) {
    std::string out;
    out.reserve(2 * tag.size() + span.payload.size() + 7);
    out += '<';
    out += tag;
    out += "> ";
    out += span.payload;
    out += " </";
    out += tag;
    out += '>';
    return out;
  };
  switch (span.kind) {
    case EntityKind::kMention: return "@user";
    case EntityKind::kHashtag: return wrap("hashtag");
    case EntityKind::kCashtag: return wrap("cashtag");
    case EntityKind::kEmoji: return wrap("emoji");
    case EntityKind::kUrl: return wrap("http");
    case EntityKind::kEmail: return "<email>";
  }
  return {};
}

namespace {

std::string RewriteWithOffsets(std::string_view utf8,
                               const std::vector<std::uint32_t>& offsets,
                               const std::vector<EntitySpan>& spans) {
  std::string out;
  out.reserve(utf8.size() + 16 * spans.size());
  std::size_t cursor = 0;
  for (const auto& s : spans) {
    const std::size_t b = offsets[s.start];
    out.append(utf8.substr(cursor, b - cursor));
    out += replacement_text(s);
    cursor = offsets[s.end];
  }
  out.append(utf8.substr(cursor));
  return out;
}

}  // namespace

std::string rewrite(std::string_view utf8, const std::vector<EntitySpan>& spans) {
  std::vector<std::uint32_t> offsets;
  unicode::Decode(utf8, offsets);
  return RewriteWithOffsets(utf8, offsets, spans);
}

NormalizedText normalize_tweet(const RawTweet& tweet, const EmojiLexicon& lex) {
  std::vector<std::uint32_t> offsets;
  const std::u32string cps = unicode::Decode(tweet.text, offsets);
  NormalizedText out;
  out.source_id = tweet.id;
  out.is_retweet = tweet.is_retweet;
  out.spans = scan_entities(std::u32string_view(cps), lex);
  out.text = out.spans.empty() ? tweet.text
                               : RewriteWithOffsets(tweet.text, offsets, out.spans);
  return out;
}

std::string normalize_text(std::string_view utf8, const EmojiLexicon& lex) {
  return normalize_tweet(RawTweet{{}, std::string(utf8), false}, lex).text;
}

}  // namespace tweetprep
