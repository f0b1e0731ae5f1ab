// Copyright 2026 The pfsa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pfsa/prg.h"

#include <sodium.h>

#include <algorithm>

#include "pfsa/error.h"
#include "pfsa/text.h"

namespace pfsa {

std::string Seed::ToHex() const { return BytesToHex(bytes); }

Seed Seed::FromHex(std::string_view hex) {
  if (hex.size() != 2 * kSeedBytes) {
    throw Error(ErrorCode::kParseError,
                "seed must be 32 hex digits, got '" + std::string(hex) + "'");
  }
  auto raw = HexToBytes(hex);
  Seed s;
  std::copy(raw.begin(), raw.end(), s.bytes.begin());
  return s;
}

std::vector<std::uint8_t> Sha256Stream(std::span<const std::uint8_t> prefix,
                                       std::size_t length) {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error(ErrorCode::kInvalidArgument, "libsodium init failed");
  std::vector<std::uint8_t> out(length);
  std::vector<std::uint8_t> input(prefix.begin(), prefix.end());
  input.resize(prefix.size() + 4);
  std::array<std::uint8_t, crypto_hash_sha256_BYTES> block;
  std::size_t written = 0;
  for (std::uint32_t i = 0; written < length; ++i) {
    input[prefix.size() + 0] = static_cast<std::uint8_t>(i >> 24);
    input[prefix.size() + 1] = static_cast<std::uint8_t>(i >> 16);
    input[prefix.size() + 2] = static_cast<std::uint8_t>(i >> 8);
    input[prefix.size() + 3] = static_cast<std::uint8_t>(i);
    crypto_hash_sha256(block.data(), input.data(), input.size());
    std::size_t take = std::min(block.size(), length - written);
    std::copy_n(block.begin(), take, out.begin() + written);
    written += take;
  }
  return out;
}

Expansion Sha256Prg::Expand(const Seed& seed, std::size_t m,
                            const Field& field) const {
  const std::size_t w = field.element_width();
  auto stream = Sha256Stream(seed.bytes, m * w + kSeedBytes);
  Expansion out;
  out.elements.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.elements.push_back(
        field.from_bytes(std::span(stream).subspan(j * w, w)));
  }
  std::copy_n(stream.begin() + m * w, kSeedBytes, out.next_seed.bytes.begin());
  return out;
}

const Prg& ReferencePrg() {
  static const Sha256Prg prg;
  return prg;
}

Expansion PrgExpand(const Seed& seed, std::size_t m, const Field& field) {
  return ReferencePrg().Expand(seed, m, field);
}

Seed EvolveSeed(const Seed& seed, std::uint64_t k, std::size_t m,
                const Field& field, const Prg& prg) {
  Seed s = seed;
  for (std::uint64_t r = 0; r < k; ++r) s = prg.Expand(s, m, field).next_seed;
  return s;
}

}  // namespace pfsa
