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


#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

#include "tweetprep/domain.hpp"
#include "tweetprep/unicode.hpp"

namespace tweetprep::testing {
namespace {

// Classes for codepoints outside ASCII, mapped into the private-use area so
// ordinary regex character classes can talk about them.
constexpr wchar_t kLetter = 0xE000;
constexpr wchar_t kDigit = 0xE001;
constexpr wchar_t kMark = 0xE002;
constexpr wchar_t kOther = 0xE003;

std::wstring ClassMap(const std::u32string& t) {
  std::wstring out;
  out.reserve(t.size());
  for (char32_t c : t) {
    if (c < 0x80) {
      out.push_back(static_cast<wchar_t>(c));
    } else if (unicode::IsLetter(c)) {
      out.push_back(kLetter);
    } else if (unicode::IsDigit(c)) {
      out.push_back(kDigit);
    } else if (unicode::IsMark(c)) {
      out.push_back(kMark);
    } else {
      out.push_back(kOther);
    }
  }
  return out;
}

const std::wstring kW = std::wstring(L"A-Za-z0-9_") + kLetter + kDigit + kMark;
const std::wstring kLD = std::wstring(L"A-Za-z0-9") + kLetter + kDigit;
const std::wstring kLDM = kLD + kMark;
const std::wstring kLet = std::wstring(L"A-Za-z") + kLetter;

std::wregex Re(const std::wstring& pattern) { return std::wregex(pattern, std::regex::ECMAScript); }

bool IsW(wchar_t c) {
  return (c >= L'A' && c <= L'Z') || (c >= L'a' && c <= L'z') || (c >= L'0' && c <= L'9') ||
         c == L'_' || c == kLetter || c == kDigit || c == kMark;
}

std::string Sub(const std::u32string& t, std::size_t b, std::size_t e) {
  return unicode::Encode(std::u32string_view(t).substr(b, e - b));
}

template <typename Fn>
void ForEachMatch(const std::wstring& s, const std::wregex& re, Fn&& fn) {
  for (auto it = std::wsregex_iterator(s.begin(), s.end(), re); it != std::wsregex_iterator(); ++it) {
    fn(static_cast<std::size_t>(it->position(0)), static_cast<std::size_t>(it->length(0)));
  }
}

std::vector<EntitySpan> Mentions(const std::u32string& t, const std::wstring& m) {
  static const std::wregex re = Re(L"@[" + kW + L"]+");
  std::vector<EntitySpan> out;
  ForEachMatch(m, re, [&](std::size_t p, std::size_t n) {
    if (t.substr(p, n) != U"@user") out.push_back({EntityKind::kMention, p, p + n, {}});
  });
  return out;
}

std::vector<EntitySpan> Cashtags(const std::u32string& t, const std::wstring& m) {
  static const std::wregex re = Re(L"\\$[A-Za-z]+");
  std::vector<EntitySpan> out;
  ForEachMatch(m, re, [&](std::size_t p, std::size_t n) {
    const bool boundary = p + n == m.size() || !IsW(m[p + n]);
    if (n - 1 <= 6 && boundary) out.push_back({EntityKind::kCashtag, p, p + n, Sub(t, p + 1, p + n)});
  });
  return out;
}

std::vector<EntitySpan> Hashtags(const std::u32string& t, const std::wstring& m) {
  static const std::wregex re = Re(L"#[" + kLD + L"][" + kLDM + L"]*");
  std::vector<EntitySpan> out;
  ForEachMatch(m, re, [&](std::size_t p, std::size_t n) {
    out.push_back({EntityKind::kHashtag, p, p + n, Sub(t, p + 1, p + n)});
  });
  return out;
}

std::vector<EntitySpan> Emails(const std::u32string&, const std::wstring& m) {
  static const std::wregex re =
      Re(L"[" + kW + L".%+\\-]+@(?:[" + kW + L"\\-]+\\.)+[" + kLet + L"]{2,}(?![" + kW + L"\\-])");
  std::vector<EntitySpan> out;
  ForEachMatch(m, re, [&](std::size_t p, std::size_t n) {
    out.push_back({EntityKind::kEmail, p, p + n, {}});
  });
  return out;
}

bool OneOf(wchar_t c, const wchar_t* set) { return std::wstring_view(set).find(c) != std::wstring_view::npos; }

std::vector<EntitySpan> Urls(const std::u32string& t, const std::wstring& m);

std::string Payload(std::string host) {
  if (auto label = registrable_label(host)) return *label;
  static const std::regex www("^[wW]{3}\\..*\\..*");
  while (std::regex_match(host, www)) host = host.substr(4);
  const std::u32string padded = unicode::Decode(" " + host + " ");
  const auto inner = Urls(padded, ClassMap(padded));
  return inner.empty() ? host : inner.front().payload;
}

// Path after `j` (which holds / ? or #); returns its end.
std::size_t PathEnd(const std::wstring& m, std::size_t j) {
  static const std::wregex re = Re(std::wstring(L"[!#-;=?-\\[\\]_a-z~") + kLetter + kDigit + kMark + L"]*");
  std::wsmatch mt;
  std::regex_search(m.begin() + static_cast<std::ptrdiff_t>(j) + 1, m.end(), mt, re,
                    std::regex_constants::match_continuous);
  std::size_t k = j + 1 + static_cast<std::size_t>(mt.length(0));
  while (k > j + 1 && OneOf(m[k - 1], L".,:;!?'*)]")) --k;
  if (k == j + 1 && (m[j] == L'?' || m[j] == L'#')) return j;
  return k;
}

struct UrlHit {
  std::size_t end;
  std::string payload;
};

std::optional<UrlHit> SchemeAt(const std::u32string& t, const std::wstring& m, std::size_t i) {
  static const std::wregex re = Re(L"[hH][tT][tT][pP][sS]?://([A-Za-z0-9" + std::wstring(1, kLetter) +
                                   kDigit + L".\\-_@:%+~]*)");
  if (i > 0 && IsW(m[i - 1])) return std::nullopt;
  std::wsmatch mt;
  if (!std::regex_search(m.begin() + static_cast<std::ptrdiff_t>(i), m.end(), mt, re,
                         std::regex_constants::match_continuous)) {
    return std::nullopt;
  }
  const std::size_t a = i + static_cast<std::size_t>(mt.position(1));
  const std::size_t j = a + static_cast<std::size_t>(mt.length(1));
  std::size_t end;
  if (j < m.size() && OneOf(m[j], L"/?#")) {
    end = PathEnd(m, j);
  } else {
    end = j;
    while (end > a && OneOf(m[end - 1], L".:")) --end;
  }
  const std::string auth = Sub(t, a, std::min(j, end));
  std::string host = auth.substr(auth.rfind('@') == std::string::npos ? 0 : auth.rfind('@') + 1);
  host = host.substr(0, host.find(':'));
  while (!host.empty() && host.back() == '.') host.pop_back();
  if (host.empty()) return std::nullopt;
  return UrlHit{end, Payload(host)};
}

std::optional<UrlHit> BareAt(const std::u32string& t, const std::wstring& m, std::size_t i) {
  static const std::wregex re = Re(L"[A-Za-z0-9][A-Za-z0-9.\\-]*");
  if (i > 0 && (IsW(m[i - 1]) || OneOf(m[i - 1], L"@#$%&+-./:=~"))) return std::nullopt;
  std::wsmatch mt;
  if (!std::regex_search(m.begin() + static_cast<std::ptrdiff_t>(i), m.end(), mt, re,
                         std::regex_constants::match_continuous)) {
    return std::nullopt;
  }
  const std::size_t r = i + static_cast<std::size_t>(mt.length(0));
  if (r < m.size() && (IsW(m[r]) || m[r] == L'@')) return std::nullopt;
  std::string host = Sub(t, i, r);
  const bool trimmed = !host.empty() && host.back() == '.';
  while (!host.empty() && host.back() == '.') host.pop_back();
  std::vector<std::string> labels;
  std::size_t s = 0;
  while (true) {
    const auto d = host.find('.', s);
    labels.push_back(host.substr(s, d == std::string::npos ? std::string::npos : d - s));
    if (d == std::string::npos) break;
    s = d + 1;
  }
  if (labels.size() < 2) return std::nullopt;
  for (const auto& l : labels) {
    if (l.empty() || l.front() == '-' || l.back() == '-') return std::nullopt;
  }
  std::string lower = host;
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const bool www = labels.size() >= 3 && lower.starts_with("www.");
  const auto label = registrable_label(host);
  if (!www && (!is_known_tld(labels.back()) || !label)) return std::nullopt;
  std::size_t end = i + unicode::Length(host);
  if (!trimmed && r < m.size() && OneOf(m[r], L"/?#")) end = PathEnd(m, r);
  return UrlHit{end, Payload(host)};
}

std::vector<EntitySpan> Urls(const std::u32string& t, const std::wstring& m) {
  std::vector<EntitySpan> out;
  std::size_t i = 0;
  while (i < m.size()) {
    std::optional<UrlHit> best = SchemeAt(t, m, i);
    if (auto b = BareAt(t, m, i); b && (!best || b->end > best->end)) best = b;
    if (best) {
      out.push_back({EntityKind::kUrl, i, best->end, best->payload});
      i = best->end;
    } else {
      ++i;
    }
  }
  return out;
}

bool IsKeycapBase(char32_t c) { return c == '#' || c == '*' || (c >= '0' && c <= '9'); }

std::vector<EntitySpan> Emoji(const std::u32string& t, const EmojiLexicon& lex) {
  std::vector<EntitySpan> out;
  std::size_t i = 0;
  while (i < t.size()) {
    const char32_t c = t[i];
    const bool keycap = IsKeycapBase(c);
    if ((!keycap && !lex.is_pictographic(c)) ||
        (unicode::IsWordChar(c) && i > 0 && unicode::IsWordChar(t[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t best = 0;
    std::string name;
    for (std::size_t len = 1; len <= 16 && i + len <= t.size(); ++len) {
      if (auto n = lex.lookup(std::u32string_view(t).substr(i, len))) {
        best = len;
        name = std::string(*n);
      }
    }
    if (best > 0) {
      out.push_back({EntityKind::kEmoji, i, i + best, name});
      i += best;
    } else if (!keycap) {
      const std::size_t len = (i + 1 < t.size() && t[i + 1] == 0xFE0F) ? 2 : 1;
      out.push_back({EntityKind::kEmoji, i, i + len, std::string(kUnknownEmojiName)});
      i += len;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<EntitySpan> oracle_scan_kind(const std::u32string& text, EntityKind kind,
                                         const EmojiLexicon& lex) {
  const std::wstring m = ClassMap(text);
  switch (kind) {
    case EntityKind::kUrl: return Urls(text, m);
    case EntityKind::kEmail: return Emails(text, m);
    case EntityKind::kMention: return Mentions(text, m);
    case EntityKind::kCashtag: return Cashtags(text, m);
    case EntityKind::kHashtag: return Hashtags(text, m);
    case EntityKind::kEmoji: return Emoji(text, lex);
  }
  return {};
}

std::vector<EntitySpan> oracle_resolve(std::vector<EntitySpan> candidates) {
  std::vector<EntitySpan> accepted;
  for (EntityKind kind : kEntityKinds) {
    for (const auto& c : candidates) {
      if (c.kind != kind) continue;
      const bool clash = std::any_of(accepted.begin(), accepted.end(), [&](const EntitySpan& a) {
        return c.start < a.end && a.start < c.end;
      });
      if (!clash) accepted.push_back(c);
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  return accepted;
}

std::vector<EntitySpan> oracle_scan(const std::string& utf8, const EmojiLexicon& lex) {
  // Staged rewriting on a view with a per-character source map; characters
  // belonging to emitted replacements map to -1.
  std::u32string view = unicode::Decode(utf8);
  std::vector<long> src(view.size());
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = static_cast<long>(i);
  std::vector<EntitySpan> out;
  for (EntityKind k : kEntityKinds) {
    std::vector<EntitySpan> keep;
    for (auto& c : oracle_scan_kind(view, k, lex)) {
      bool clean = true;
      for (std::size_t i = c.start; i < c.end; ++i) clean = clean && src[i] >= 0;
      if (clean) keep.push_back(c);
    }
    std::sort(keep.begin(), keep.end(),
              [](const EntitySpan& a, const EntitySpan& b) { return a.start > b.start; });
    for (const auto& c : keep) {
      const std::u32string rep = unicode::Decode(replacement_text(c));
      EntitySpan mapped = c;
      mapped.start = static_cast<std::size_t>(src[c.start]);
      mapped.end = static_cast<std::size_t>(src[c.end - 1] + 1);
      out.push_back(mapped);
      view.replace(c.start, c.end - c.start, rep);
      src.erase(src.begin() + static_cast<long>(c.start), src.begin() + static_cast<long>(c.end));
      src.insert(src.begin() + static_cast<long>(c.start), rep.size(), -1L);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  return out;
}

bool oracle_leaks_private(const std::string& utf8) {
  const std::u32string t = unicode::Decode(utf8);
  const std::wstring m = ClassMap(t);
  return !Mentions(t, m).empty() || !Emails(t, m).empty();
}

std::string rewrite_in_order(const std::string& utf8, std::vector<EntitySpan> spans,
                             const std::vector<std::size_t>& order) {
  std::u32string t = unicode::Decode(utf8);
  std::vector<std::ptrdiff_t> delta(spans.size(), 0);
  std::vector<bool> done(spans.size(), false);
  for (std::size_t idx : order) {
    const auto& s = spans[idx];
    std::ptrdiff_t shift = 0;
    for (std::size_t j = 0; j < spans.size(); ++j) {
      if (done[j] && spans[j].start < s.start) shift += delta[j];
    }
    const std::u32string rep = unicode::Decode(replacement_text(s));
    t.replace(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(s.start) + shift), s.end - s.start, rep);
    delta[idx] = static_cast<std::ptrdiff_t>(rep.size()) - static_cast<std::ptrdiff_t>(s.end - s.start);
    done[idx] = true;
  }
  return unicode::Encode(t);
}

std::string random_tweet(std::mt19937_64& rng) {
  static const std::vector<std::string> words = {
      "merhaba", "bugün",  "çok",    "güzel", "İstanbul", "ığdır",  "şehir", "öğrenci",
      "ÇAĞRI",   "Gündem", "maç",    "yarın", "haberler", "teşekkürler", "ılık", "ü",
      "e-posta", "x",      "ab",     "12",    "3.5",      "2023",   "kahve", "Ödev",
      "naïve",   "مرحبا",   "привет", "日本",   "é",       "co",     "www",   "com"};
  static const std::vector<std::string> fragments = {
      "@", "#", "$", ".", "..", ",", "!", "?", ":", ";", "(", ")", "'", "\"", "…", "-", "_",
      "/", "<", ">", "&", "%", "+", "=", "~", "*", "\xE2\x80\x8D", "\xEF\xB8\x8F", "\xCC\x81",
      "@user", "<hashtag>", "</hashtag>", "<cashtag>", "</cashtag>", "<emoji>", "</emoji>",
      "<http>", "</http>", "<email>", "http://", "https://", "www.", ".com", ".com.tr", "co.uk",
      "1.2.3.4", "foo..com", "-a.com", "a-.com", "localhost", "x.y", "mail.google"};
  static const std::vector<std::string> emoji = {
      "🤗", "😂", "🇹🇷", "❤️", "❤", "👍🏽", "🔥", "1️⃣", "#️⃣", "👨‍👩‍👧‍👦", "🏳️‍🌈", "©️", "™",
      "☺", "🫠", "\xF0\x9F\x9B\xB8", "\xF0\x9F\xAB\xB7", "✨", "🙏🏻", "⚽", "👩🏾‍💻"};
  static const std::vector<std::string> hosts = {
      "foo.com", "www.foo.com", "sub.example.co.uk", "t.co", "bit.ly", "haber.com.tr",
      "WWW.Example.ORG", "a.b.c.d.net", "xn--80ak6aa92e.com", "foo.unknowntld", "my-site.io",
      "www.co.uk", "gov.tr", "istanbul.bel.tr", "127.0.0.1"};
  std::uniform_int_distribution<int> pick(0, 1 << 30);
  auto any = [&](const std::vector<std::string>& v) -> const std::string& {
    return v[static_cast<std::size_t>(pick(rng)) % v.size()];
  };
  auto word_chars = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) {
      const int r = pick(rng) % 6;
      if (r == 0) s += "_";
      else if (r == 1) s += std::to_string(pick(rng) % 10);
      else if (r == 2) s += any({"ç", "ğ", "ı", "İ", "ö", "ş", "ü", "Ş"});
      else s += static_cast<char>('a' + pick(rng) % 26);
    }
    return s;
  };
  const int n_pieces = 1 + pick(rng) % 20;
  std::string out;
  for (int p = 0; p < n_pieces; ++p) {
    const int sep = pick(rng) % 10;
    if (p > 0) out += sep < 6 ? " " : sep < 8 ? "" : sep == 8 ? "\n" : "  ";
    switch (pick(rng) % 14) {
      case 0: case 1: case 2: out += any(words); break;
      case 3: out += "@" + word_chars(1 + pick(rng) % 8); break;
      case 4: out += "#" + word_chars(1 + pick(rng) % 8); break;
      case 5: {
        std::string tag = "$";
        const int n = 1 + pick(rng) % 8;
        for (int i = 0; i < n; ++i) tag += static_cast<char>((pick(rng) % 2 ? 'A' : 'a') + pick(rng) % 26);
        out += tag;
        break;
      }
      case 6: {
        std::string url = any({"http://", "https://", "HTTPS://", ""}) + any(hosts);
        if (pick(rng) % 2) url += any({"/", "/a/b", "/yol?x=1&y=ğ", "#frag", "/path.", "/p)", "?", ":8080/x"});
        out += url;
        break;
      }
      case 7: out += word_chars(1 + pick(rng) % 6) + any({"@", ".x@", "+tag@"}) + any(hosts); break;
      case 8: case 9: out += any(emoji); break;
      case 10: case 11: out += any(fragments); break;
      case 12: out += any(words) + any(fragments) + any(words); break;
      case 13: out += word_chars(1 + pick(rng) % 5); break;
    }
  }
  return out;
}

OracleBpe oracle_train_bpe(const std::vector<std::string>& corpus, std::size_t vocab_size,
                           const std::vector<std::string>& specials) {
  std::vector<std::string> reserved(kStructuralTokens.begin(), kStructuralTokens.end());
  reserved.insert(reserved.end(), specials.begin(), specials.end());
  std::map<std::string, std::uint64_t> counts;
  for (const auto& text : corpus) {
    pretokenize(text, reserved, [&](std::string_view piece, int idx) {
      if (idx < 0) ++counts[std::string(piece)];
    });
  }
  std::vector<std::pair<std::vector<std::string>, std::uint64_t>> words;
  std::set<std::string> vocab(reserved.begin(), reserved.end());
  for (const auto& [w, n] : counts) {
    words.emplace_back(initial_symbols(w), n);
    for (char32_t c : unicode::Decode(w)) {
      std::string s = unicode::Encode(std::u32string(1, c));
      vocab.insert(s);
      vocab.insert(s + "</w>");
    }
  }
  OracleBpe out;
  while (vocab.size() < vocab_size) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> pairs;
    for (const auto& [syms, n] : words) {
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) pairs[{syms[i], syms[i + 1]}] += n;
    }
    // std::map iterates pairs in (left, right) order, so the first maximum
    // is the lexicographically smallest.
    const std::pair<std::string, std::string>* best = nullptr;
    std::uint64_t best_n = 0;
    for (const auto& [p, n] : pairs) {
      if (n > best_n) {
        best = &p;
        best_n = n;
      }
    }
    if (best == nullptr || best_n < 2) break;
    const auto [l, r] = *best;
    out.merges.push_back({l, r});
    vocab.insert(l + r);
    for (auto& [syms, n] : words) {
      std::vector<std::string> next;
      for (std::size_t i = 0; i < syms.size();) {
        if (i + 1 < syms.size() && syms[i] == l && syms[i + 1] == r) {
          next.push_back(l + r);
          i += 2;
        } else {
          next.push_back(syms[i++]);
        }
      }
      syms = std::move(next);
    }
  }
  out.vocab_size = vocab.size();
  return out;
}

double oracle_weighted_f1(const std::vector<std::string>& pred,
                          const std::vector<std::string>& gold,
                          const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  std::vector<std::vector<double>> cm(n, std::vector<double>(n, 0.0));  // [gold][pred]
  auto idx = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
  };
  for (std::size_t i = 0; i < gold.size(); ++i) cm[idx(gold[i])][idx(pred[i])] += 1.0;
  double total = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double tp = cm[c][c], col = 0.0, row = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      col += cm[k][c];
      row += cm[c][k];
    }
    const double precision = col > 0 ? tp / col : 0.0;
    const double recall = row > 0 ? tp / row : 0.0;
    const double f1 = precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    total += f1 * row;
  }
  return total / static_cast<double>(gold.size());
}

}  // namespace tweetprep::testing
