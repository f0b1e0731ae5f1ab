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

#include "pfsa/random.h"

#include <sodium.h>

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

#include "pfsa/error.h"

namespace pfsa {

std::uint64_t ByteRandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Uniform(0)");
  if (std::has_single_bit(bound)) {
    std::array<std::uint8_t, 8> buf;
    Fill(buf);
    std::uint64_t v = 0;
    for (auto b : buf) v = (v << 8) | b;
    return v & (bound - 1);
  }
  std::array<std::uint8_t, 16> buf;
  Fill(buf);
  unsigned __int128 acc = 0;
  for (auto b : buf) acc = ((acc << 8) | b) % bound;
  return static_cast<std::uint64_t>(acc);
}

Seed ByteRandomSource::NewSeed() {
  Seed s;
  Fill(s.bytes);
  return s;
}

void OsRandomSource::Fill(std::span<std::uint8_t> out) {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error(ErrorCode::kInvalidArgument, "libsodium init failed");
  randombytes_buf(out.data(), out.size());
}

DeterministicRandomSource::DeterministicRandomSource(std::uint64_t seed,
                                                     std::uint64_t stream) {
  static constexpr char kTag[] = "pfsa-dealer";
  prefix_.assign(kTag, kTag + sizeof(kTag) - 1);
  for (std::uint64_t word : {seed, stream}) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      prefix_.push_back(static_cast<std::uint8_t>(word >> shift));
    }
  }
}

void DeterministicRandomSource::Fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (offset_ == buffer_.size()) {
      std::vector<std::uint8_t> input = prefix_;
      for (int shift = 56; shift >= 0; shift -= 8) {
        input.push_back(static_cast<std::uint8_t>(counter_ >> shift));
      }
      ++counter_;
      buffer_.assign(crypto_hash_sha256_BYTES, 0);
      crypto_hash_sha256(buffer_.data(), input.data(), input.size());
      offset_ = 0;
    }
    std::size_t take = std::min(buffer_.size() - offset_, out.size() - done);
    std::copy_n(buffer_.begin() + offset_, take, out.begin() + done);
    offset_ += take;
    done += take;
  }
}

std::uint64_t EnumeratingRandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "Uniform(0)");
  if (pos_ < digits_.size()) {
    if (bounds_[pos_] != bound) {
      throw Error(ErrorCode::kInvalidArgument,
                  "enumerated procedure changed its draw sequence");
    }
    return digits_[pos_++];
  }
  digits_.push_back(0);
  bounds_.push_back(bound);
  ++pos_;
  return 0;
}

Seed EnumeratingRandomSource::NewSeed() {
  std::uint64_t v = Uniform(std::uint64_t{1} << seed_bits_);
  Seed s;
  for (int k = 0; k < 8; ++k) {
    s.bytes[kSeedBytes - 1 - k] = static_cast<std::uint8_t>(v >> (8 * k));
  }
  return s;
}

bool EnumeratingRandomSource::Advance() {
  if (pos_ != digits_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "enumerated procedure changed its draw count");
  }
  pos_ = 0;
  for (std::size_t k = digits_.size(); k-- > 0;) {
    if (++digits_[k] < bounds_[k]) return true;
    digits_[k] = 0;
  }
  return false;
}

std::uint64_t EnumeratingRandomSource::OutcomeCount() const {
  std::uint64_t total = 1;
  for (auto b : bounds_) {
    if (total > std::numeric_limits<std::uint64_t>::max() / b) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= b;
  }
  return total;
}

std::uint64_t ForEachOutcome(unsigned seed_bits, std::uint64_t max_outcomes,
                             const std::function<void(RandomSource&)>& fn) {
  EnumeratingRandomSource source(seed_bits);
  fn(source);
  const std::uint64_t total = source.OutcomeCount();
  if (total > max_outcomes) {
    throw Error(ErrorCode::kTooLargeToEnumerate,
                std::to_string(total) + " outcomes exceed the limit of " +
                    std::to_string(max_outcomes));
  }
  while (source.Advance()) fn(source);
  return total;
}

}  // namespace pfsa
