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

// Dealer-side randomness. Agents never draw randomness themselves; all of
// their per-tick values come from the shared-seed PRG.

#ifndef PFSA_RANDOM_H_
#define PFSA_RANDOM_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pfsa/field.h"
#include "pfsa/prg.h"

namespace pfsa {

class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform in [0, bound), bound >= 1.
  virtual std::uint64_t Uniform(std::uint64_t bound) = 0;
  virtual Seed NewSeed() = 0;

  FieldElement Element(const Field& f) { return {Uniform(f.modulus())}; }
  bool Bit() { return Uniform(2) == 1; }
};

// Sources backed by a byte stream. Power-of-two bounds are exact; other
// bounds reduce 16 bytes mod bound (bias below bound / 2^128).
class ByteRandomSource : public RandomSource {
 public:
  std::uint64_t Uniform(std::uint64_t bound) override;
  Seed NewSeed() override;

 protected:
  virtual void Fill(std::span<std::uint8_t> out) = 0;
};

// OS entropy (libsodium randombytes).
class OsRandomSource final : public ByteRandomSource {
 protected:
  void Fill(std::span<std::uint8_t> out) override;
};

// Reproducible stream:
//   SHA256("pfsa-dealer" || BE64(seed) || BE64(stream) || BE64(i)).
// Distinct (seed, stream) pairs give independent streams.
class DeterministicRandomSource final : public ByteRandomSource {
 public:
  explicit DeterministicRandomSource(std::uint64_t seed,
                                     std::uint64_t stream = 0);

 protected:
  void Fill(std::span<std::uint8_t> out) override;

 private:
  std::vector<std::uint8_t> prefix_;
  std::uint64_t counter_ = 0;
  std::vector<std::uint8_t> buffer_;
  std::size_t offset_ = 0;
};

// Walks every outcome of a randomized procedure in mixed-radix order. Each
// run must issue the same sequence of Uniform bounds. Seeds come from a
// reduced space of 2^seed_bits values so the walk stays finite.
class EnumeratingRandomSource final : public RandomSource {
 public:
  explicit EnumeratingRandomSource(unsigned seed_bits) : seed_bits_(seed_bits) {}

  std::uint64_t Uniform(std::uint64_t bound) override;
  Seed NewSeed() override;

  // Rewinds and steps to the next outcome; false once all are exhausted.
  bool Advance();
  // Product of all bounds seen in the first run, saturating at UINT64_MAX.
  std::uint64_t OutcomeCount() const;

 private:
  unsigned seed_bits_;
  std::vector<std::uint64_t> digits_;
  std::vector<std::uint64_t> bounds_;
  std::size_t pos_ = 0;
};

// Calls `fn` once per equally likely outcome; returns the outcome count.
// Throws kTooLargeToEnumerate if the count exceeds `max_outcomes`.
std::uint64_t ForEachOutcome(unsigned seed_bits, std::uint64_t max_outcomes,
                             const std::function<void(RandomSource&)>& fn);

}  // namespace pfsa

#endif  // PFSA_RANDOM_H_
