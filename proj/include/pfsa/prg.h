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

// Seed expansion G(seed) -> (b_1..b_m, next_seed).
//
// The reference construction is a SHA-256 counter-mode byte stream:
//
//   block_i = SHA256(seed || BE32(i)),  i = 0, 1, 2, ...
//
// The first m * w bytes become the m field elements (w = 1 for GF(2), 16
// otherwise; see Field::from_bytes), the next 16 bytes the next seed. Output
// is bit-exact across platforms, so every member of a seed-sharing group
// derives identical values without communicating.

#ifndef PFSA_PRG_H_
#define PFSA_PRG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfsa/field.h"

namespace pfsa {

inline constexpr std::size_t kSeedBytes = 16;

struct Seed {
  std::array<std::uint8_t, kSeedBytes> bytes{};

  std::string ToHex() const;
  // Exactly 32 lowercase hex digits; throws kParseError.
  static Seed FromHex(std::string_view hex);

  friend auto operator<=>(const Seed&, const Seed&) = default;
};

struct Expansion {
  std::vector<FieldElement> elements;
  Seed next_seed;
};

class Prg {
 public:
  virtual ~Prg() = default;
  virtual Expansion Expand(const Seed& seed, std::size_t m,
                           const Field& field) const = 0;
};

class Sha256Prg final : public Prg {
 public:
  Expansion Expand(const Seed& seed, std::size_t m,
                   const Field& field) const override;
};

const Prg& ReferencePrg();

// First `length` bytes of the SHA256(prefix || BE32(i)) stream.
std::vector<std::uint8_t> Sha256Stream(std::span<const std::uint8_t> prefix,
                                       std::size_t length);

Expansion PrgExpand(const Seed& seed, std::size_t m, const Field& field);

// k-fold seed evolution; k == 0 returns `seed` unchanged.
Seed EvolveSeed(const Seed& seed, std::uint64_t k, std::size_t m,
                const Field& field, const Prg& prg = ReferencePrg());

}  // namespace pfsa

#endif  // PFSA_PRG_H_
