#!/usr/bin/env python3
# Copyright 2026 The WLAC Authors. All Rights Reserved.
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

"""Regenerates data/zh/pinyin.tsv and data/zh/lexicon.txt.

Requires pypinyin and jieba. The generated files are checked in; this
script only needs to run when refreshing them.
"""

import argparse
import os

import jieba
from pypinyin import Style, pinyin


def is_han(ch):
    return 0x4E00 <= ord(ch) <= 0x9FFF


def write_pinyin(path):
    with open(path, "w", encoding="utf-8") as out:
        out.write("# char\tsyllable (toneless, first reading)\n")
        for cp in range(0x4E00, 0xA000):
            ch = chr(cp)
            reading = pinyin(ch, style=Style.NORMAL, heteronym=False, errors="ignore")
            if not reading or not reading[0]:
                continue
            syl = reading[0][0].replace("ü", "v").lower()
            if syl.isascii() and syl.isalpha():
                out.write(f"{ch}\t{syl}\n")


def write_lexicon(path, size):
    dict_path = os.path.join(os.path.dirname(jieba.__file__), "dict.txt")
    entries = []
    with open(dict_path, encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) < 2:
                continue
            word, freq = parts[0], int(parts[1])
            if all(is_han(c) for c in word):
                entries.append((freq, word))
    entries.sort(key=lambda e: (-e[0], e[1]))
    with open(path, "w", encoding="utf-8") as out:
        for _, word in entries[:size]:
            out.write(word + "\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "zh"))
    parser.add_argument("--lexicon-size", type=int, default=20000)
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    write_pinyin(os.path.join(args.out, "pinyin.tsv"))
    write_lexicon(os.path.join(args.out, "lexicon.txt"), args.lexicon_size)


if __name__ == "__main__":
    main()
