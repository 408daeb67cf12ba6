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

#include "tweetprep/bpe.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <thread>

#include "tweetprep/error.hpp"
#include "tweetprep/io.hpp"
#include "tweetprep/unicode.hpp"

namespace tweetprep {
namespace {

constexpr std::string_view kMergesHeader = "#tweetprep-bpe v1 reserved=";

std::uint64_t PairKey(TokenId a, TokenId b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Emits the non-reserved segment as words; a literal end-of-word marker
// closes the current word so no inner symbol can end with the marker.
template <typename Fn>
void EmitWords(std::string_view seg, Fn&& emit) {
  while (!seg.empty()) {
    const auto m = seg.find(kEndOfWord);
    if (m == std::string_view::npos || m + kEndOfWord.size() == seg.size()) {
      emit(seg);
      return;
    }
    emit(seg.substr(0, m + kEndOfWord.size()));
    seg.remove_prefix(m + kEndOfWord.size());
  }
}

template <typename Fn>
void ForEachPiece(std::string_view text, std::span<const std::string> reserved, Fn&& fn) {
  for (std::string_view chunk : unicode::SplitWhitespace(text)) {
    std::size_t seg = 0;
    std::size_t pos = 0;
    while (pos < chunk.size()) {
      const char c = chunk[pos];
      int hit = -1;
      std::size_t hit_len = 0;
      if (c == '<' || c == '@') {
        for (std::size_t r = 0; r < reserved.size(); ++r) {
          const std::string& tok = reserved[r];
          if (tok.size() > hit_len && chunk.compare(pos, tok.size(), tok) == 0) {
            hit = static_cast<int>(r);
            hit_len = tok.size();
          }
        }
      } else {
        for (std::size_t r = 0; r < reserved.size(); ++r) {
          const std::string& tok = reserved[r];
          if (!tok.empty() && tok[0] == c && tok.size() > hit_len &&
              chunk.compare(pos, tok.size(), tok) == 0) {
            hit = static_cast<int>(r);
            hit_len = tok.size();
          }
        }
      }
      if (hit >= 0) {
        if (pos > seg) {
          EmitWords(chunk.substr(seg, pos - seg), [&](std::string_view w) { fn(w, -1); });
        }
        fn(chunk.substr(pos, hit_len), hit);
        pos += hit_len;
        seg = pos;
      } else {
        ++pos;
      }
    }
    if (seg < chunk.size()) {
      EmitWords(chunk.substr(seg), [&](std::string_view w) { fn(w, -1); });
    }
  }
}

std::vector<std::string> BuildReserved(const std::vector<std::string>& specials) {
  std::vector<std::string> reserved(kStructuralTokens.begin(), kStructuralTokens.end());
  for (const auto& s : specials) {
    if (s.empty()) throw BadConfig("special tokens must be non-empty");
    if (std::find(reserved.begin(), reserved.end(), s) != reserved.end()) {
      throw BadConfig("duplicate special token '" + s + "'");
    }
    if (!unicode::SplitWhitespace(s).empty() && unicode::SplitWhitespace(s).size() != 1) {
      throw BadConfig("special token '" + s + "' contains whitespace");
    }
    reserved.push_back(s);
  }
  return reserved;
}

}  // namespace

std::vector<std::string> default_entity_tokens() {
  std::vector<std::string> out(kEntityTokens.begin(), kEntityTokens.end());
  out.emplace_back(kEmailToken);
  return out;
}

void pretokenize(std::string_view text, std::span<const std::string> reserved,
                 const std::function<void(std::string_view, int)>& on_piece) {
  ForEachPiece(text, reserved, on_piece);
}

std::vector<std::string> initial_symbols(std::string_view word) {
  std::vector<std::string> out;
  const std::u32string cps = unicode::Decode(word);
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    std::string s;
    unicode::AppendUtf8(cp, s);
    out.push_back(std::move(s));
  }
  if (!out.empty()) out.back() += kEndOfWord;
  return out;
}

// ---------------------------------------------------------------------------
// BpeModel

BpeModel::BpeModel(std::vector<std::string> tokens, std::vector<Merge> merges,
                   std::size_t n_reserved)
    : tokens_(std::move(tokens)), merges_(std::move(merges)), n_reserved_(n_reserved) {
  if (n_reserved_ < kNumStructural || n_reserved_ > tokens_.size()) {
    throw FormatError("reserved token count out of range");
  }
  for (std::size_t i = 0; i < kNumStructural; ++i) {
    if (tokens_[i] != kStructuralTokens[i]) {
      throw FormatError("structural token " + std::to_string(i) + " must be '" +
                        std::string(kStructuralTokens[i]) + "'");
    }
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw FormatError("duplicate vocabulary entry '" + tokens_[i] + "'");
    }
    if (i < n_reserved_) continue;
    std::string_view t = tokens_[i];
    const bool final = t.ends_with(kEndOfWord) && t.size() > kEndOfWord.size();
    if (final) t.remove_suffix(kEndOfWord.size());
    const std::u32string cps = unicode::Decode(t);
    if (cps.size() != 1 || unicode::Encode(cps) != t) continue;
    auto& slot = chars_.try_emplace(cps[0], kUnkId, kUnkId).first->second;
    (final ? slot.second : slot.first) = static_cast<TokenId>(i);
  }
  next_rank_.assign(merges_.size(), -1);
  merge_result_.resize(merges_.size());
  merge_pair_.resize(merges_.size());
  std::unordered_map<std::uint64_t, std::int32_t> last_rank;
  for (std::size_t r = 0; r < merges_.size(); ++r) {
    const auto& m = merges_[r];
    const auto l = id_of(m.left);
    const auto rt = id_of(m.right);
    const auto res = id_of(m.left + m.right);
    if (!l || !rt || !res) {
      throw FormatError("merge '" + m.left + " " + m.right + "' refers to unknown tokens");
    }
    if (is_reserved(*l) || is_reserved(*rt) || is_reserved(*res)) {
      throw FormatError("merge '" + m.left + " " + m.right + "' involves a reserved token");
    }
    merge_result_[r] = *res;
    merge_pair_[r] = {*l, *rt};
    const auto key = PairKey(*l, *rt);
    const auto rank = static_cast<std::int32_t>(r);
    if (auto it = last_rank.find(key); it != last_rank.end()) {
      next_rank_[it->second] = rank;
      it->second = rank;
    } else {
      first_rank_.emplace(key, rank);
      last_rank.emplace(key, rank);
    }
  }
}

std::optional<TokenId> BpeModel::id_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& BpeModel::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw UnknownId("token id " + std::to_string(id) + " outside vocabulary of " +
                    std::to_string(tokens_.size()));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

void BpeModel::encode_word(std::string_view word, std::vector<TokenId>& out) const {
  std::vector<TokenId> syms;
  const std::u32string cps = unicode::Decode(word);
  syms.reserve(cps.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    auto it = chars_.find(cps[i]);
    if (it == chars_.end()) {
      syms.push_back(kUnkId);
      continue;
    }
    syms.push_back(i + 1 == cps.size() ? it->second.second : it->second.first);
  }
  // Apply merges in learning order: repeatedly take the earliest merge after
  // the last one applied that matches an adjacent pair.
  std::int32_t floor = -1;
  while (syms.size() > 1) {
    std::int32_t best = -1;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = first_rank_.find(PairKey(syms[i], syms[i + 1]));
      if (it == first_rank_.end()) continue;
      std::int32_t r = it->second;
      while (r != -1 && r <= floor) r = next_rank_[r];
      if (r != -1 && (best == -1 || r < best)) best = r;
    }
    if (best == -1) break;
    const TokenId result = merge_result_[best];
    const auto [left, right] = merge_pair_[best];
    std::size_t w = 0;
    for (std::size_t i = 0; i < syms.size();) {
      if (i + 1 < syms.size() && syms[i] == left && syms[i + 1] == right) {
        syms[w++] = result;
        i += 2;
      } else {
        syms[w++] = syms[i++];
      }
    }
    syms.resize(w);
    floor = best;
  }
  out.insert(out.end(), syms.begin(), syms.end());
}

void BpeModel::encode_append(std::string_view text, std::vector<TokenId>& out) const {
  ForEachPiece(text, reserved_tokens(), [&](std::string_view piece, int reserved) {
    if (reserved >= 0) {
      out.push_back(static_cast<TokenId>(reserved));
    } else {
      encode_word(piece, out);
    }
  });
}

TokenSequence BpeModel::encode(std::string_view text, std::string source_id) const {
  TokenSequence seq;
  seq.source_id = std::move(source_id);
  encode_append(text, seq.ids);
  return seq;
}

std::size_t BpeModel::count_subwords(std::string_view text) const {
  std::vector<TokenId> ids;
  encode_append(text, ids);
  return ids.size();
}

std::string BpeModel::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    const std::string& tok = token(id);
    if (id == kUnkId) {
      out += tok;
    } else if (is_reserved(id)) {
      if (!out.empty() && out.back() != ' ') out += ' ';
      out += tok;
      out += ' ';
    } else if (std::string_view(tok).ends_with(kEndOfWord)) {
      out.append(tok, 0, tok.size() - kEndOfWord.size());
      out += ' ';
    } else {
      out += tok;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string BpeModel::merges_text() const {
  std::string out;
  out += kMergesHeader;
  out += std::to_string(n_reserved_);
  out += '\n';
  for (const auto& m : merges_) {
    out += m.left;
    out += ' ';
    out += m.right;
    out += '\n';
  }
  return out;
}

std::string BpeModel::vocab_text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

BpeModel BpeModel::parse(std::string_view merges_text, std::string_view vocab_text) {
  std::vector<std::string> tokens;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(vocab_text)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      throw FormatError("vocab.txt:" + std::to_string(lineno) + ": missing tab");
    }
    std::size_t id = 0;
    const auto idtext = line.substr(tab + 1);
    auto [p, ec] = std::from_chars(idtext.data(), idtext.data() + idtext.size(), id);
    if (ec != std::errc() || p != idtext.data() + idtext.size() || id != tokens.size()) {
      throw FormatError("vocab.txt:" + std::to_string(lineno) + ": ids must be dense and ordered");
    }
    tokens.emplace_back(line.substr(0, tab));
  }

  std::size_t n_reserved = kNumStructural + kEntityTokens.size() + 1;
  std::vector<Merge> merges;
  lineno = 0;
  for (std::string_view line : split_lines(merges_text)) {
    ++lineno;
    if (lineno == 1 && line.starts_with(kMergesHeader)) {
      const auto num = line.substr(kMergesHeader.size());
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n_reserved);
      if (ec != std::errc() || p != num.data() + num.size()) {
        throw FormatError("merges.txt: malformed header");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string_view::npos || line.find(' ', sp + 1) != std::string_view::npos) {
      throw FormatError("merges.txt:" + std::to_string(lineno) + ": expected 'left right'");
    }
    merges.push_back({std::string(line.substr(0, sp)), std::string(line.substr(sp + 1))});
  }
  return BpeModel(std::move(tokens), std::move(merges), n_reserved);
}

void BpeModel::save(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoFailure("cannot create " + dir.string() + ": " + ec.message());
  write_file_atomic(dir / "merges.txt", merges_text());
  write_file_atomic(dir / "vocab.txt", vocab_text());
}

BpeModel BpeModel::load(const std::filesystem::path& dir) {
  return parse(read_file(dir / "merges.txt"), read_file(dir / "vocab.txt"));
}

// ---------------------------------------------------------------------------
// Training

BpeTrainer::BpeTrainer(BpeTrainOptions options)
    : options_(std::move(options)), reserved_(BuildReserved(options_.special_tokens)) {}

void BpeTrainer::add(std::string_view text) {
  ForEachPiece(text, reserved_, [&](std::string_view piece, int reserved) {
    if (reserved >= 0) return;
    ++word_counts_[std::string(piece)];
    ++total_words_;
  });
}

namespace {

struct HeapEntry {
  std::int64_t count;
  TokenId left;
  TokenId right;
};

}  // namespace

BpeModel BpeTrainer::train() const {
  if (word_counts_.empty()) throw EmptyCorpus("no words to train on");

  std::vector<std::pair<std::string, std::uint64_t>> words(word_counts_.begin(),
                                                           word_counts_.end());
  std::sort(words.begin(), words.end());

  std::set<std::string> base;
  for (const auto& [w, _] : words) {
    for (char32_t cp : unicode::Decode(w)) {
      std::string s;
      unicode::AppendUtf8(cp, s);
      base.insert(s);
      base.insert(s + std::string(kEndOfWord));
    }
  }
  const std::size_t base_size = reserved_.size() + base.size();
  if (options_.vocab_size <= base_size) {
    throw VocabTooSmall("vocab_size " + std::to_string(options_.vocab_size) +
                        " leaves no room for merges over a base vocabulary of " +
                        std::to_string(base_size));
  }

  std::vector<std::string> tokens = reserved_;
  tokens.insert(tokens.end(), base.begin(), base.end());
  std::unordered_map<std::string, TokenId> index;
  for (std::size_t i = 0; i < tokens.size(); ++i) index.emplace(tokens[i], static_cast<TokenId>(i));

  std::vector<std::vector<TokenId>> syms(words.size());
  std::vector<std::int64_t> freq(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (auto& s : initial_symbols(words[w].first)) syms[w].push_back(index.at(s));
    freq[w] = static_cast<std::int64_t>(words[w].second);
  }

  // Initial pair counts, sharded over words and reduced in shard order.
  const unsigned workers = std::max(1u, std::min<unsigned>(options_.workers, static_cast<unsigned>(words.size())));
  std::vector<std::unordered_map<std::uint64_t, std::int64_t>> partial(workers);
  {
    std::vector<std::thread> pool;
    const std::size_t chunk = (words.size() + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(words.size(), lo + chunk);
        for (std::size_t w = lo; w < hi; ++w) {
          for (std::size_t i = 0; i + 1 < syms[w].size(); ++i) {
            partial[t][PairKey(syms[w][i], syms[w][i + 1])] += freq[w];
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  for (auto& p : partial) {
    for (const auto& [k, c] : p) counts[k] += c;
  }
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> where;
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::size_t i = 0; i + 1 < syms[w].size(); ++i) {
      auto& v = where[PairKey(syms[w][i], syms[w][i + 1])];
      if (v.empty() || v.back() != w) v.push_back(static_cast<std::uint32_t>(w));
    }
  }

  auto worse = [&tokens](const HeapEntry& a, const HeapEntry& b) {
    if (a.count != b.count) return a.count < b.count;
    const int l = tokens[a.left].compare(tokens[b.left]);
    if (l != 0) return l > 0;
    return tokens[a.right].compare(tokens[b.right]) > 0;
  };
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(worse)> heap(worse);
  for (const auto& [k, c] : counts) {
    heap.push({c, static_cast<TokenId>(k >> 32), static_cast<TokenId>(k & 0xFFFFFFFFu)});
  }

  std::vector<Merge> merges;
  std::vector<std::uint32_t> stamp(words.size(), 0);
  std::uint32_t iteration = 0;
  std::unordered_map<std::uint64_t, std::int64_t> delta;

  while (tokens.size() < options_.vocab_size && !heap.empty()) {
    const HeapEntry top = heap.top();
    const std::uint64_t key = PairKey(top.left, top.right);
    const auto it = counts.find(key);
    const std::int64_t current = it == counts.end() ? 0 : it->second;
    if (current != top.count) {
      heap.pop();
      if (current > 0 && current < top.count) heap.push({current, top.left, top.right});
      continue;
    }
    if (current < 2) break;
    heap.pop();

    const std::string merged = tokens[top.left] + tokens[top.right];
    TokenId result;
    if (auto found = index.find(merged); found != index.end()) {
      result = found->second;
    } else {
      result = static_cast<TokenId>(tokens.size());
      tokens.push_back(merged);
      index.emplace(merged, result);
    }
    merges.push_back({tokens[top.left], tokens[top.right]});

    ++iteration;
    delta.clear();
    const std::vector<std::uint32_t> affected = where[key];
    for (std::uint32_t w : affected) {
      if (stamp[w] == iteration) continue;
      stamp[w] = iteration;
      auto& s = syms[w];
      bool present = false;
      for (std::size_t i = 0; i + 1 < s.size() && !present; ++i) {
        present = s[i] == top.left && s[i + 1] == top.right;
      }
      if (!present) continue;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) delta[PairKey(s[i], s[i + 1])] -= freq[w];
      std::size_t out = 0;
      for (std::size_t i = 0; i < s.size();) {
        if (i + 1 < s.size() && s[i] == top.left && s[i + 1] == top.right) {
          s[out++] = result;
          i += 2;
        } else {
          s[out++] = s[i++];
        }
      }
      s.resize(out);
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const auto k = PairKey(s[i], s[i + 1]);
        delta[k] += freq[w];
        auto& v = where[k];
        if (v.empty() || v.back() != w) v.push_back(w);
      }
    }
    // Apply deltas in key order so heap contents do not depend on hashing.
    std::vector<std::pair<std::uint64_t, std::int64_t>> ordered(delta.begin(), delta.end());
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [k, d] : ordered) {
      if (d == 0) continue;
      auto& c = counts[k];
      c += d;
      if (d > 0) heap.push({c, static_cast<TokenId>(k >> 32), static_cast<TokenId>(k & 0xFFFFFFFFu)});
      if (c == 0) counts.erase(k);
    }
  }
  return BpeModel(std::move(tokens), std::move(merges), reserved_.size());
}

BpeModel train_bpe(std::span<const std::string> corpus, const BpeTrainOptions& options) {
  BpeTrainer trainer(options);
  for (const auto& text : corpus) trainer.add(text);
  return trainer.train();
}

}  // namespace tweetprep
