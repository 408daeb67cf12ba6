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


// Newline-delimited JSON records exchanged between stages.
//
//   tweets      {"id": str, "text": str, "is_retweet": bool?}
//   normalized  tweets plus "spans": [{"kind","start","end","payload"}]
//   encoded     {"id": str, "ids": [int, ...]}
//   manifest    {"id": str, "text": str, "label": str}
//   splits      {"id": str, "dataset": str, "fold": int}
//
// Parsers throw FormatError naming the origin and line.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tweetprep/bpe.hpp"
#include "tweetprep/corpus.hpp"
#include "tweetprep/normalize.hpp"

namespace tweetprep {

std::vector<RawTweet> parse_tweets(std::string_view jsonl, std::string_view origin = "input");
std::string tweet_record(const RawTweet& tweet);
std::string normalized_record(const NormalizedText& text);
/// Spans are read back when present.
std::vector<NormalizedText> parse_normalized(std::string_view jsonl,
                                             std::string_view origin = "input");

std::string encoded_record(const TokenSequence& seq);
std::vector<TokenSequence> parse_encoded(std::string_view jsonl, std::string_view origin = "input");

DatasetManifest parse_manifest(std::string_view jsonl, std::string name,
                               std::vector<std::string> label_set = {});
std::string manifest_record(const Instance& inst);

std::string split_record(std::string_view dataset, std::string_view id, std::size_t fold);

/// Joins records with '\n' and a trailing newline.
std::string join_lines(const std::vector<std::string>& lines);

}  // namespace tweetprep
