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

// UTF-8 decoding and the handful of character classes the scanners need.
// Class tables are generated from the Unicode database (see
// tools/gen_tables.py); BMP lookups go through a bitmap built on first use.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tweetprep::unicode {

using Codepoint = char32_t;

inline constexpr Codepoint kReplacementChar = 0xFFFD;

// Decodes UTF-8. Malformed sequences decode to U+FFFD, one per offending
// byte, so offsets stay meaningful on dirty input.
std::u32string Decode(std::string_view utf8);

// As Decode(), also filling `byte_offsets` with the starting byte of every
// codepoint plus a final entry equal to utf8.size().
std::u32string Decode(std::string_view utf8,
                      std::vector<std::uint32_t>& byte_offsets);

void AppendUtf8(Codepoint cp, std::string& out);
std::string Encode(std::u32string_view cps);

// Number of codepoints Decode() would produce.
std::size_t Length(std::string_view utf8);

// True when the input decodes without any replacement.
bool IsValidUtf8(std::string_view utf8);

bool IsLetter(Codepoint cp);
bool IsDigit(Codepoint cp);
// Nonspacing and spacing combining marks, excluding variation selectors.
bool IsMark(Codepoint cp);
bool IsSpace(Codepoint cp);

// Letters, digits, marks and underscore: the body of a mention.
inline bool IsWordChar(Codepoint cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9') || cp == '_';
  }
  return IsLetter(cp) || IsDigit(cp) || IsMark(cp);
}

inline bool IsAsciiAlpha(Codepoint cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

inline bool IsAsciiDigit(Codepoint cp) { return cp >= '0' && cp <= '9'; }

inline Codepoint AsciiLower(Codepoint cp) {
  return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
}

// Splits on IsSpace() runs; empty pieces are dropped.
std::vector<std::string_view> SplitWhitespace(std::string_view utf8);

}  // namespace tweetprep::unicode
