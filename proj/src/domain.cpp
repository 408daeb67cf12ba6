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

#include "tweetprep/domain.hpp"

#include <algorithm>
#include <vector>

#include "tweetprep/error.hpp"

namespace tweetprep {
namespace {

#include "data/public_suffix.inc"

struct SuffixRules {
  std::vector<std::string_view> plain;       // "co.uk"
  std::vector<std::string_view> wildcard;    // "ck" for "*.ck"
  std::vector<std::string_view> exception;   // "www.ck" for "!www.ck"

  SuffixRules() {
    for (std::string_view r : kPublicSuffixRules) {
      if (r.starts_with("!")) {
        exception.push_back(r.substr(1));
      } else if (r.starts_with("*.")) {
        wildcard.push_back(r.substr(2));
      } else {
        plain.push_back(r);
      }
    }
    std::sort(plain.begin(), plain.end());
    std::sort(wildcard.begin(), wildcard.end());
    std::sort(exception.begin(), exception.end());
  }

  static bool has(const std::vector<std::string_view>& v, std::string_view s) {
    return std::binary_search(v.begin(), v.end(), s);
  }
};

const SuffixRules& Rules() {
  static const SuffixRules rules;
  return rules;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::vector<std::string_view> Labels(std::string_view host) {
  std::vector<std::string_view> labels;
  std::size_t start = 0;
  while (true) {
    const auto dot = host.find('.', start);
    labels.push_back(host.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return labels;
}

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string_view url_host(std::string_view url) {
  if (auto scheme = url.find("://"); scheme != std::string_view::npos) {
    url.remove_prefix(scheme + 3);
  }
  url = url.substr(0, url.find_first_of("/?#"));
  if (auto at = url.rfind('@'); at != std::string_view::npos) {
    url.remove_prefix(at + 1);
  }
  url = url.substr(0, url.find(':'));
  if (url.ends_with('.')) url.remove_suffix(1);
  return url;
}

std::size_t public_suffix_labels(std::string_view host) {
  const std::string lower = AsciiLower(host);
  const auto labels = Labels(lower);
  const auto& rules = Rules();
  const std::string_view whole = lower;
  // Walk from the longest candidate suffix to the shortest; the first rule
  // that matches is the longest one.
  std::size_t offset = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string_view suffix = whole.substr(offset);
    if (SuffixRules::has(rules.exception, suffix)) return labels.size() - i - 1;
    if (SuffixRules::has(rules.plain, suffix)) return labels.size() - i;
    if (i + 1 < labels.size()) {
      const std::size_t parent = offset + labels[i].size() + 1;
      if (SuffixRules::has(rules.wildcard, whole.substr(parent))) {
        return labels.size() - i;
      }
    }
    offset += labels[i].size() + 1;
  }
  return 1;
}

bool is_known_tld(std::string_view tld) {
  if (tld.empty() || tld.find('.') != std::string_view::npos) return false;
  return SuffixRules::has(Rules().plain, AsciiLower(tld));
}

std::optional<std::string> registrable_label(std::string_view host) {
  if (host.empty()) return std::nullopt;
  const auto labels = Labels(host);
  if (labels.size() < 2) return std::nullopt;
  if (std::any_of(labels.begin(), labels.end(),
                  [](std::string_view l) { return l.empty(); })) {
    return std::nullopt;
  }
  if (AllDigits(labels.back())) return std::nullopt;
  const std::size_t suffix = public_suffix_labels(host);
  if (suffix >= labels.size()) return std::nullopt;
  return std::string(labels[labels.size() - suffix - 1]);
}

std::string extract_domain(std::string_view url) {
  const std::string_view host = url_host(url);
  if (auto label = registrable_label(host)) return *std::move(label);
  throw DomainUnparseable("no registrable domain in '" + std::string(url) + "'");
}

}  // namespace tweetprep
