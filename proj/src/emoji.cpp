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

#include "tweetprep/emoji.hpp"

#include <algorithm>
#include <fstream>

#include "tweetprep/error.hpp"

namespace tweetprep {
namespace {

struct EmojiRow {
  const char* seq;
  const char* name;
};

#include "data/emoji_table.inc"

bool ValidName(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

struct EmojiLexicon::Trie {
  struct Node {
    std::vector<std::pair<char32_t, std::uint32_t>> kids;  // sorted by cp
    std::int32_t name = -1;
    bool from_user = false;
  };

  std::vector<Node> nodes{1};
  std::vector<std::string> names;
  std::size_t n_entries = 0;
  std::size_t n_user = 0;

  std::uint32_t child(std::uint32_t node, char32_t cp) const {
    const auto& kids = nodes[node].kids;
    auto it = std::lower_bound(
        kids.begin(), kids.end(), cp,
        [](const auto& kv, char32_t c) { return kv.first < c; });
    if (it == kids.end() || it->first != cp) return 0;
    return it->second;
  }

  void insert(std::u32string_view seq, std::string name, bool from_user) {
    std::uint32_t node = 0;
    for (char32_t cp : seq) {
      std::uint32_t next = child(node, cp);
      if (next == 0) {
        next = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();
        auto& kids = nodes[node].kids;
        auto it = std::lower_bound(
            kids.begin(), kids.end(), cp,
            [](const auto& kv, char32_t c) { return kv.first < c; });
        kids.insert(it, {cp, next});
      }
      node = next;
    }
    Node& n = nodes[node];
    if (n.name < 0) {
      ++n_entries;
      n.name = static_cast<std::int32_t>(names.size());
      names.push_back(std::move(name));
    } else {
      names[n.name] = std::move(name);
    }
    if (from_user && !n.from_user) ++n_user;
    n.from_user = n.from_user || from_user;
  }

  const Node* find(std::u32string_view seq) const {
    std::uint32_t node = 0;
    for (char32_t cp : seq) {
      node = child(node, cp);
      if (node == 0) return nullptr;
    }
    return &nodes[node];
  }
};

EmojiLexicon::EmojiLexicon(std::shared_ptr<const Trie> trie)
    : trie_(std::move(trie)) {}

const EmojiLexicon& EmojiLexicon::bundled() {
  static const EmojiLexicon lex{[] {
    auto trie = std::make_shared<Trie>();
    trie->nodes.reserve(8192);
    for (const auto& row : kBundledEmoji) {
      trie->insert(unicode::Decode(row.seq), row.name, false);
    }
    return std::shared_ptr<const Trie>(std::move(trie));
  }()};
  return lex;
}

EmojiLexicon EmojiLexicon::with_overrides(
    const std::vector<std::pair<std::string, std::string>>& entries) {
  auto trie = std::make_shared<Trie>(*bundled().trie_);
  for (const auto& [seq, name] : entries) {
    if (!unicode::IsValidUtf8(seq)) {
      throw FormatError("emoji lexicon: sequence is not valid UTF-8");
    }
    const std::u32string cps = unicode::Decode(seq);
    if (cps.empty()) throw FormatError("emoji lexicon: empty sequence");
    const char32_t first = cps.front();
    if (first < 0x80 || unicode::IsWordChar(first) || unicode::IsSpace(first)) {
      throw FormatError("emoji lexicon: sequence '" + seq +
                        "' must start with a non-ASCII symbol");
    }
    if (!ValidName(name)) {
      throw FormatError("emoji lexicon: name '" + name +
                        "' must match [a-z0-9_]+");
    }
    trie->insert(cps, name, true);
  }
  return EmojiLexicon(std::move(trie));
}

EmojiLexicon EmojiLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open emoji lexicon " + path.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected two tab-separated columns");
    }
    entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return with_overrides(entries);
}

EmojiLexicon::Match EmojiLexicon::match(std::u32string_view text,
                                        std::size_t pos) const {
  Match best;
  std::uint32_t node = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    node = trie_->child(node, text[i]);
    if (node == 0) break;
    const auto& n = trie_->nodes[node];
    if (n.name >= 0) {
      best.length = i - pos + 1;
      best.name = trie_->names[n.name];
    }
  }
  return best;
}

std::optional<std::string_view> EmojiLexicon::user_name(
    std::u32string_view seq) const {
  const auto* n = trie_->find(seq);
  if (n == nullptr || n->name < 0 || !n->from_user) return std::nullopt;
  return trie_->names[n->name];
}

std::optional<std::string_view> EmojiLexicon::lookup(
    std::u32string_view seq) const {
  const auto* n = trie_->find(seq);
  if (n == nullptr || n->name < 0) return std::nullopt;
  return trie_->names[n->name];
}

bool EmojiLexicon::is_pictographic(unicode::Codepoint cp) const {
  if (cp < 0x80) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return true;
  return trie_->child(0, cp) != 0;
}

std::size_t EmojiLexicon::size() const { return trie_->n_entries; }
std::size_t EmojiLexicon::user_size() const { return trie_->n_user; }

std::string emoji_name(std::u32string_view seq, const EmojiLexicon& lex) {
  if (auto user = lex.user_name(seq)) return std::string(*user);
  if (auto bundled = EmojiLexicon::bundled().lookup(seq)) {
    return std::string(*bundled);
  }
  return std::string(kUnknownEmojiName);
}

std::string emoji_name(std::string_view utf8_seq, const EmojiLexicon& lex) {
  return emoji_name(unicode::Decode(utf8_seq), lex);
}

}  // namespace tweetprep
