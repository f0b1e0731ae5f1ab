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

// Arithmetic over GF(2) and prime fields GF(p), p < 2^63.

#ifndef PFSA_FIELD_H_
#define PFSA_FIELD_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace pfsa {

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// A reduced field element. Which field it belongs to is carried by the
// Field it is used with, not by the element itself.
struct FieldElement {
  std::uint64_t value = 0;

  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

bool IsPrime(std::uint64_t n);

class Field {
 public:
  // Throws kCompositeModulus for composite moduli and kInvalidArgument for
  // moduli below 2 or at/above 2^63.
  static Field Make(std::uint64_t modulus);

  std::uint64_t modulus() const { return modulus_; }
  bool is_binary() const { return modulus_ == 2; }

  // Bytes of PRG output consumed per element: 1 for GF(2), 16 otherwise.
  std::size_t element_width() const { return is_binary() ? 1 : 16; }

  // Hex characters in the serialized form: ceil(bitlength(modulus) / 4).
  std::size_t hex_width() const;

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  // Reduces an arbitrary integer.
  FieldElement from_uint(std::uint64_t v) const { return {v % modulus_}; }

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  // Throws kZeroInverse for a == 0.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  bool is_reduced(FieldElement a) const { return a.value < modulus_; }

  // GF(2): least significant bit of a single byte. GF(p): big-endian
  // integer of 16 bytes reduced mod p. Throws kWidthMismatch otherwise.
  FieldElement from_bytes(std::span<const std::uint8_t> bytes) const;

  // Fixed-width lowercase hex of the reduced value.
  std::string to_hex(FieldElement a) const;
  // Accepts exactly hex_width() hex digits encoding a reduced value.
  FieldElement from_hex(std::string_view hex) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t modulus) : modulus_(modulus) {}

  std::uint64_t modulus_;
};

}  // namespace pfsa

#endif  // PFSA_FIELD_H_
