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

// Secret-sharing algebra: XOR (n,n) sharing of bits, Shamir (t+1,n)
// sharing, Lagrange interpolation, and the per-group zero polynomials that
// let a seed-sharing group refresh Shamir shares without communicating.

#ifndef PFSA_SHARING_H_
#define PFSA_SHARING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pfsa/field.h"
#include "pfsa/random.h"

namespace pfsa {

enum class ShareScheme { kAdditiveGf2, kShamir };

struct Share {
  std::uint32_t agent;  // 1-based; also the Shamir evaluation point
  FieldElement value;
};

struct ShareVector {
  ShareScheme scheme;
  Field field;
  std::vector<Share> shares;
};

struct Point {
  FieldElement x;
  FieldElement y;
};

// n uniformly random bits whose XOR is `secret`. Requires n >= 2.
ShareVector AdditiveShareBit(bool secret, std::size_t n, RandomSource& rng);

// XOR of all n shares. Throws kMissingShares unless agents 1..n are all
// present exactly once.
bool AdditiveReconstruct(const ShareVector& v, std::size_t n);

// Shares f(1..n) of f(x) = secret + c_1 x + ... + c_t x^t with uniform c_k.
// Throws kFieldTooSmall unless modulus > n, kInvalidArgument unless n > t.
ShareVector ShamirShare(FieldElement secret, std::size_t t, std::size_t n,
                        const Field& field, RandomSource& rng);

// Same, with caller-chosen c_1..c_t.
ShareVector ShamirShareWithCoefficients(FieldElement secret,
                                        std::span<const FieldElement> coeffs,
                                        std::size_t n, const Field& field);

// Horner evaluation of coeffs[0] + coeffs[1] x + ...
FieldElement EvaluatePolynomial(std::span<const FieldElement> coeffs,
                                FieldElement x, const Field& field);

// Value at x0 of the minimal-degree polynomial through `points`.
// Throws kDuplicateX, or kInvalidArgument when `points` is empty.
FieldElement LagrangeAt(std::span<const Point> points, FieldElement x0,
                        const Field& field);

// True iff all points lie on the polynomial interpolating the first
// (degree + 1) of them.
bool OnPolynomialOfDegree(std::span<const Point> points, std::size_t degree,
                          const Field& field);

// P^T(i) for the degree-t polynomial fixed by P(0) = 0, P(x) = 0 for every
// agent x outside `group`, and P(min(group)) = b. `group` is sorted.
// Throws kBadGroupSize unless |group| = n - t + 1, kAgentNotInGroup unless
// i is a member, kFieldTooSmall unless modulus > n.
FieldElement GroupZeroPolyEval(std::span<const std::uint32_t> group,
                               std::size_t t, std::size_t n, FieldElement b,
                               std::uint32_t i, const Field& field);

// The b-independent factor: GroupZeroPolyEval(..., b, ...) = b * weight.
// Nonzero for every member i.
FieldElement GroupZeroPolyWeight(std::span<const std::uint32_t> group,
                                 std::size_t t, std::size_t n, std::uint32_t i,
                                 const Field& field);

}  // namespace pfsa

#endif  // PFSA_SHARING_H_
