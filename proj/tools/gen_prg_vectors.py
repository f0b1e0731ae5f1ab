#!/usr/bin/env python3
# Copyright 2026 The pfsa Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes golden PRG vectors from a standalone implementation.

The byte stream is block_i = SHA256(seed || BE32(i)). An expansion takes
m elements (1 byte each, low bit, for GF(2); 16 big-endian bytes mod p
otherwise) and then 16 bytes of next seed.

Usage: gen_prg_vectors.py > tests/golden/prg_vectors.txt
"""

import hashlib
import sys


def stream(seed, length):
    out = b""
    i = 0
    while len(out) < length:
        out += hashlib.sha256(seed + i.to_bytes(4, "big")).digest()
        i += 1
    return out[:length]


def expand(seed, m, p):
    w = 1 if p == 2 else 16
    data = stream(seed, m * w + 16)
    elems = []
    for j in range(m):
        chunk = data[j * w:(j + 1) * w]
        elems.append(chunk[0] & 1 if p == 2 else int.from_bytes(chunk, "big") % p)
    return elems, data[m * w:]


def hex_width(p):
    return (p.bit_length() + 3) // 4


def main():
    seeds = [bytes(16), bytes([0xFF] * 16), bytes(range(16))]
    seeds += [hashlib.sha256(b"pfsa vector %d" % k).digest()[:16] for k in range(4)]
    moduli = [2, 5, 7, 257, (1 << 61) - 1]
    out = sys.stdout
    out.write("# seed_hex m modulus -> b_1,...,b_m next_seed_hex\n")
    for seed in seeds:
        for p in moduli:
            for m in (1, 4, 8):
                elems, nxt = expand(seed, m, p)
                hw = hex_width(p)
                vals = ",".join(format(v, "0%dx" % hw) for v in elems)
                out.write("%s %d %d -> %s %s\n" % (seed.hex(), m, p, vals, nxt.hex()))


if __name__ == "__main__":
    main()
