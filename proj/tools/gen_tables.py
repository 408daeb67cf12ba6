#!/usr/bin/env python3
# Copyright 2026 The tweetprep Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the data tables under src/data/.

Requires the `emoji` and `publicsuffixlist` packages. The generated files are
checked in; rerun only when bumping a snapshot.
"""

import os
import re
import sys
import unicodedata

import emoji
import publicsuffixlist

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "src", "data")

HEADER = "// Generated by tools/gen_tables.py. Do not edit.\n"


def ranges(pred):
    out = []
    start = None
    for cp in range(0x110000):
        if pred(cp):
            if start is None:
                start = cp
        elif start is not None:
            out.append((start, cp - 1))
            start = None
    if start is not None:
        out.append((start, 0x10FFFF))
    return out


def is_variation_selector(cp):
    return 0xFE00 <= cp <= 0xFE0F or 0xE0100 <= cp <= 0xE01EF


def cat(cp):
    return unicodedata.category(chr(cp))


def write_ranges(f, name, rs):
    f.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for lo, hi in rs:
        f.write(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
    f.write("};\n\n")


def gen_unicode():
    letters = ranges(lambda cp: cat(cp).startswith("L"))
    digits = ranges(lambda cp: cat(cp) == "Nd")
    marks = ranges(lambda cp: cat(cp) in ("Mn", "Mc") and not is_variation_selector(cp))
    spaces = ranges(lambda cp: chr(cp).isspace())
    with open(os.path.join(OUT, "unicode_classes.inc"), "w") as f:
        f.write(HEADER)
        f.write(f"// Unicode {unicodedata.unidata_version}\n\n")
        write_ranges(f, "kLetterRanges", letters)
        write_ranges(f, "kDigitRanges", digits)
        write_ranges(f, "kMarkRanges", marks)
        write_ranges(f, "kSpaceRanges", spaces)


def snake(name):
    name = unicodedata.normalize("NFKD", name)
    name = "".join(c for c in name if not unicodedata.combining(c))
    name = name.lower()
    name = re.sub(r"[^a-z0-9]+", "_", name)
    return name.strip("_")


def shortcode(entry):
    for alias in entry.get("alias", []):
        a = alias.strip(":").lower()
        if re.fullmatch(r"[a-z0-9_]+", a) and re.search(r"[a-z]", a):
            return a
    return snake(entry["en"].strip(":"))


def c_escape(s):
    out = []
    for b in s.encode("utf-8"):
        if 0x20 <= b < 0x7F and b not in (0x22, 0x5C, 0x3F):
            out.append(chr(b))
        else:
            out.append(f"\\{b:03o}")
    return "".join(out)


def gen_emoji():
    rows = sorted((seq, shortcode(e)) for seq, e in emoji.EMOJI_DATA.items())
    rows.sort(key=lambda r: r[0].encode("utf-8"))
    with open(os.path.join(OUT, "emoji_table.inc"), "w") as f:
        f.write(HEADER)
        f.write(f"// emoji package {emoji.__version__}; {len(rows)} sequences\n\n")
        f.write("inline constexpr EmojiRow kBundledEmoji[] = {\n")
        for seq, name in rows:
            assert re.fullmatch(r"[a-z0-9_]+", name), name
            f.write(f'    {{"{c_escape(seq)}", "{name}"}},\n')
        f.write("};\n")


def gen_psl():
    path = os.path.join(os.path.dirname(publicsuffixlist.__file__), "public_suffix_list.dat")
    rules = []
    with open(path, encoding="utf-8") as src:
        for line in src:
            line = line.strip()
            if "===END ICANN DOMAINS===" in line:
                break
            if not line or line.startswith("//"):
                continue
            rules.append(line.split()[0].lower())
    with open(os.path.join(OUT, "public_suffix.inc"), "w") as f:
        f.write(HEADER)
        f.write(f"// ICANN section of the public suffix list; {len(rules)} rules\n\n")
        f.write("inline constexpr std::string_view kPublicSuffixRules[] = {\n")
        for r in rules:
            f.write(f'    "{c_escape(r)}",\n')
        f.write("};\n")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    gen_unicode()
    gen_emoji()
    gen_psl()
    sys.exit(0)
