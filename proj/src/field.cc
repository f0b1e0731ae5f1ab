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

#include "pfsa/field.h"

#include <bit>
#include <charconv>

#include "pfsa/error.h"

namespace pfsa {
namespace {

using u128 = unsigned __int128;

std::uint64_t MulMod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t PowMod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = MulMod(result, base, m);
    base = MulMod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

// Deterministic Miller-Rabin; these bases cover every 64-bit integer.
bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = PowMod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = MulMod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::Make(std::uint64_t modulus) {
  if (modulus < 2 || modulus >= (std::uint64_t{1} << 63)) {
    throw Error(ErrorCode::kInvalidArgument,
                "modulus must be in [2, 2^63), got " + std::to_string(modulus));
  }
  if (!IsPrime(modulus)) {
    throw Error(ErrorCode::kCompositeModulus,
                std::to_string(modulus) + " is not prime");
  }
  return Field(modulus);
}

std::size_t Field::hex_width() const {
  std::size_t bits = std::bit_width(modulus_);
  return (bits + 3) / 4;
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  std::uint64_t s = a.value + b.value;
  return {s >= modulus_ ? s - modulus_ : s};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const {
  return {a.value >= b.value ? a.value - b.value
                             : a.value + modulus_ - b.value};
}

FieldElement Field::neg(FieldElement a) const {
  return {a.value == 0 ? 0 : modulus_ - a.value};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  return {MulMod(a.value, b.value, modulus_)};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.value == 0) throw Error(ErrorCode::kZeroInverse, "inverse of 0");
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = modulus_, new_r = a.value;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += modulus_;
  return {static_cast<std::uint64_t>(t)};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  return {PowMod(a.value, e, modulus_)};
}

FieldElement Field::from_bytes(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != element_width()) {
    throw Error(ErrorCode::kWidthMismatch,
                "expected " + std::to_string(element_width()) + " bytes, got " +
                    std::to_string(bytes.size()));
  }
  if (is_binary()) return {static_cast<std::uint64_t>(bytes[0] & 1)};
  u128 acc = 0;
  for (std::uint8_t b : bytes) {
    acc = ((acc << 8) | b) % modulus_;
  }
  return {static_cast<std::uint64_t>(acc)};
}

std::string Field::to_hex(FieldElement a) const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(hex_width(), '0');
  std::uint64_t v = a.value;
  for (std::size_t i = out.size(); i-- > 0 && v != 0;) {
    out[i] = kDigits[v & 0xf];
    v >>= 4;
  }
  return out;
}

FieldElement Field::from_hex(std::string_view hex) const {
  std::uint64_t v = 0;
  bool lower = hex.find_first_of("ABCDEF") == std::string_view::npos;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (hex.size() != hex_width() || !lower || ec != std::errc() ||
      ptr != hex.data() + hex.size() || v >= modulus_) {
    throw Error(ErrorCode::kParseError,
                "bad field element hex '" + std::string(hex) + "'");
  }
  return {v};
}

}  // namespace pfsa
