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

#include "tweetprep/unicode.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <span>

namespace tweetprep::unicode {
namespace {

struct CodepointRange {
  char32_t lo;
  char32_t hi;
};

#include "data/unicode_classes.inc"

bool InRanges(std::span<const CodepointRange> ranges, Codepoint cp) {
  auto it = std::upper_bound(
      ranges.begin(), ranges.end(), cp,
      [](Codepoint c, const CodepointRange& r) { return c < r.lo; });
  if (it == ranges.begin()) return false;
  --it;
  return cp <= it->hi;
}

class BmpClass {
 public:
  explicit BmpClass(std::span<const CodepointRange> ranges) : ranges_(ranges) {
    for (const auto& r : ranges) {
      if (r.lo > 0xFFFF) break;
      for (char32_t c = r.lo; c <= std::min<char32_t>(r.hi, 0xFFFF); ++c) {
        bits_.set(c);
      }
    }
  }

  bool Contains(Codepoint cp) const {
    if (cp <= 0xFFFF) return bits_.test(cp);
    return InRanges(ranges_, cp);
  }

 private:
  std::span<const CodepointRange> ranges_;
  std::bitset<0x10000> bits_;
};

const BmpClass& Letters() {
  static const BmpClass c{kLetterRanges};
  return c;
}
const BmpClass& Digits() {
  static const BmpClass c{kDigitRanges};
  return c;
}
const BmpClass& Marks() {
  static const BmpClass c{kMarkRanges};
  return c;
}

// Returns the decoded codepoint and advances `i`; malformed input yields
// U+FFFD and consumes a single byte.
Codepoint DecodeOne(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  Codepoint cp = 0;
  Codepoint min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    ++i;
    return kReplacementChar;
  }
  if (i + len > s.size()) {
    ++i;
    return kReplacementChar;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return kReplacementChar;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return kReplacementChar;
  }
  i += len;
  return cp;
}

}  // namespace

std::u32string Decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) out.push_back(DecodeOne(utf8, i));
  return out;
}

std::u32string Decode(std::string_view utf8,
                      std::vector<std::uint32_t>& byte_offsets) {
  std::u32string out;
  out.reserve(utf8.size());
  byte_offsets.clear();
  byte_offsets.reserve(utf8.size() + 1);
  std::size_t i = 0;
  while (i < utf8.size()) {
    byte_offsets.push_back(static_cast<std::uint32_t>(i));
    out.push_back(DecodeOne(utf8, i));
  }
  byte_offsets.push_back(static_cast<std::uint32_t>(utf8.size()));
  return out;
}

void AppendUtf8(Codepoint cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string Encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (Codepoint cp : cps) AppendUtf8(cp, out);
  return out;
}

std::size_t Length(std::string_view utf8) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < utf8.size()) {
    DecodeOne(utf8, i);
    ++n;
  }
  return n;
}

bool IsValidUtf8(std::string_view utf8) {
  std::size_t i = 0;
  while (i < utf8.size()) {
    const std::size_t before = i;
    if (DecodeOne(utf8, i) == kReplacementChar) {
      // A literal U+FFFD is three bytes; a decoding failure consumes one.
      if (i - before == 1) return false;
    }
  }
  return true;
}

bool IsLetter(Codepoint cp) {
  if (cp < 0x80) return IsAsciiAlpha(cp);
  return Letters().Contains(cp);
}

bool IsDigit(Codepoint cp) {
  if (cp < 0x80) return IsAsciiDigit(cp);
  return Digits().Contains(cp);
}

bool IsMark(Codepoint cp) {
  if (cp < 0x300) return false;
  return Marks().Contains(cp);
}

bool IsSpace(Codepoint cp) {
  if (cp < 0x80) return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || (cp >= 0x1C && cp <= 0x1F);
  return InRanges(kSpaceRanges, cp);
}

std::vector<std::string_view> SplitWhitespace(std::string_view utf8) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  std::size_t start = std::string_view::npos;
  while (i < utf8.size()) {
    const std::size_t at = i;
    const Codepoint cp = DecodeOne(utf8, i);
    if (IsSpace(cp)) {
      if (start != std::string_view::npos) {
        out.push_back(utf8.substr(start, at - start));
        start = std::string_view::npos;
      }
    } else if (start == std::string_view::npos) {
      start = at;
    }
  }
  if (start != std::string_view::npos) out.push_back(utf8.substr(start));
  return out;
}

}  // namespace tweetprep::unicode
