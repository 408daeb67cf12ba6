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


#include "tweetprep/records.hpp"

#include <json.hpp>

#include "tweetprep/error.hpp"
#include "tweetprep/io.hpp"
#include "tweetprep/unicode.hpp"

namespace tweetprep {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename Fn>
void ForEachRecord(std::string_view jsonl, std::string_view origin, Fn&& fn) {
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(jsonl)) {
    ++lineno;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
    if (!j.is_object()) throw FormatError(where + ": expected a JSON object");
    try {
      fn(j, where);
    } catch (const json::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
}

std::string RequireString(const json& j, const char* key, const std::string& where,
                          bool allow_empty = true) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw FormatError(where + ": field '" + key + "' must be a string");
  }
  auto s = it->get<std::string>();
  if (!allow_empty && s.empty()) throw FormatError(where + ": field '" + key + "' is empty");
  if (!unicode::IsValidUtf8(s)) throw FormatError(where + ": field '" + key + "' is not UTF-8");
  return s;
}

bool OptionalBool(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw FormatError(where + ": field '" + key + "' must be a boolean");
  return it->get<bool>();
}

}  // namespace

std::vector<RawTweet> parse_tweets(std::string_view jsonl, std::string_view origin) {
  std::vector<RawTweet> out;
  ForEachRecord(jsonl, origin, [&](const json& j, const std::string& where) {
    out.push_back({RequireString(j, "id", where, false), RequireString(j, "text", where),
                   OptionalBool(j, "is_retweet", where)});
  });
  return out;
}

std::string tweet_record(const RawTweet& tweet) {
  ordered_json j{{"id", tweet.id}, {"text", tweet.text}};
  if (tweet.is_retweet) j["is_retweet"] = true;
  return j.dump();
}

std::string normalized_record(const NormalizedText& text) {
  ordered_json spans = ordered_json::array();
  for (const auto& s : text.spans) {
    spans.push_back(ordered_json{{"kind", kind_name(s.kind)},
                                 {"start", s.start},
                                 {"end", s.end},
                                 {"payload", s.payload}});
  }
  ordered_json j{{"id", text.source_id}, {"text", text.text}};
  if (text.is_retweet) j["is_retweet"] = true;
  j["spans"] = std::move(spans);
  return j.dump();
}

std::vector<NormalizedText> parse_normalized(std::string_view jsonl, std::string_view origin) {
  std::vector<NormalizedText> out;
  ForEachRecord(jsonl, origin, [&](const json& j, const std::string& where) {
    NormalizedText n;
    n.source_id = RequireString(j, "id", where, false);
    n.text = RequireString(j, "text", where);
    n.is_retweet = OptionalBool(j, "is_retweet", where);
    if (const auto it = j.find("spans"); it != j.end()) {
      if (!it->is_array()) throw FormatError(where + ": 'spans' must be an array");
      for (const auto& s : *it) {
        const auto kind = parse_kind(s.at("kind").get<std::string>());
        if (!kind) throw FormatError(where + ": unknown span kind");
        n.spans.push_back({*kind, s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>(),
                           s.at("payload").get<std::string>()});
      }
    }
    out.push_back(std::move(n));
  });
  return out;
}

std::string encoded_record(const TokenSequence& seq) {
  return ordered_json{{"id", seq.source_id}, {"ids", seq.ids}}.dump();
}

std::vector<TokenSequence> parse_encoded(std::string_view jsonl, std::string_view origin) {
  std::vector<TokenSequence> out;
  ForEachRecord(jsonl, origin, [&](const json& j, const std::string& where) {
    TokenSequence seq;
    seq.source_id = RequireString(j, "id", where);
    const auto it = j.find("ids");
    if (it == j.end() || !it->is_array()) throw FormatError(where + ": 'ids' must be an array");
    for (const auto& v : *it) {
      if (!v.is_number_integer()) throw FormatError(where + ": ids must be integers");
      seq.ids.push_back(v.get<TokenId>());
    }
    out.push_back(std::move(seq));
  });
  return out;
}

DatasetManifest parse_manifest(std::string_view jsonl, std::string name,
                               std::vector<std::string> label_set) {
  std::vector<Instance> instances;
  ForEachRecord(jsonl, name, [&](const json& j, const std::string& where) {
    instances.push_back({RequireString(j, "id", where, false), RequireString(j, "text", where),
                         RequireString(j, "label", where, false)});
  });
  return make_manifest(std::move(name), std::move(instances), std::move(label_set));
}

std::string manifest_record(const Instance& inst) {
  return ordered_json{{"id", inst.id}, {"text", inst.text}, {"label", inst.label}}.dump();
}

std::string split_record(std::string_view dataset, std::string_view id, std::size_t fold) {
  return ordered_json{{"id", id}, {"dataset", dataset}, {"fold", fold}}.dump();
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::size_t n = 0;
  for (const auto& l : lines) n += l.size() + 1;
  std::string out;
  out.reserve(n);
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace tweetprep
