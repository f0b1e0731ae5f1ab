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

#include "pfsa/sharing.h"

#include <algorithm>
#include <string>

#include "pfsa/error.h"

namespace pfsa {
namespace {

void RequireFieldLargerThan(const Field& field, std::size_t n) {
  if (field.modulus() <= n) {
    throw Error(ErrorCode::kFieldTooSmall,
                "modulus " + std::to_string(field.modulus()) +
                    " must exceed n = " + std::to_string(n));
  }
}

// Montgomery batch inversion; all inputs nonzero.
std::vector<FieldElement> BatchInverse(std::span<const FieldElement> xs,
                                       const Field& f) {
  std::vector<FieldElement> prefix(xs.size());
  FieldElement acc = f.one();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    prefix[k] = acc;
    acc = f.mul(acc, xs[k]);
  }
  FieldElement inv = f.inv(acc);
  std::vector<FieldElement> out(xs.size());
  for (std::size_t k = xs.size(); k-- > 0;) {
    out[k] = f.mul(inv, prefix[k]);
    inv = f.mul(inv, xs[k]);
  }
  return out;
}

}  // namespace

ShareVector AdditiveShareBit(bool secret, std::size_t n, RandomSource& rng) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need n >= 2");
  ShareVector v{ShareScheme::kAdditiveGf2, Field::Make(2), {}};
  std::uint64_t parity = secret ? 1 : 0;
  for (std::uint32_t i = 1; i < n; ++i) {
    std::uint64_t bit = rng.Uniform(2);
    parity ^= bit;
    v.shares.push_back({i, {bit}});
  }
  v.shares.push_back({static_cast<std::uint32_t>(n), {parity}});
  return v;
}

bool AdditiveReconstruct(const ShareVector& v, std::size_t n) {
  std::vector<bool> seen(n + 1, false);
  std::uint64_t acc = 0;
  for (const auto& s : v.shares) {
    if (s.agent < 1 || s.agent > n || seen[s.agent]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bad or repeated agent index " + std::to_string(s.agent));
    }
    seen[s.agent] = true;
    acc ^= s.value.value & 1;
  }
  if (v.shares.size() != n) {
    throw Error(ErrorCode::kMissingShares,
                "(n,n) reconstruction needs all " + std::to_string(n) +
                    " shares, got " + std::to_string(v.shares.size()));
  }
  return acc == 1;
}

FieldElement EvaluatePolynomial(std::span<const FieldElement> coeffs,
                                FieldElement x, const Field& field) {
  FieldElement acc = field.zero();
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = field.add(field.mul(acc, x), coeffs[k]);
  }
  return acc;
}

ShareVector ShamirShareWithCoefficients(FieldElement secret,
                                        std::span<const FieldElement> coeffs,
                                        std::size_t n, const Field& field) {
  RequireFieldLargerThan(field, n);
  if (n <= coeffs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need n > t");
  }
  std::vector<FieldElement> poly;
  poly.reserve(coeffs.size() + 1);
  poly.push_back(secret);
  poly.insert(poly.end(), coeffs.begin(), coeffs.end());
  ShareVector v{ShareScheme::kShamir, field, {}};
  for (std::uint32_t i = 1; i <= n; ++i) {
    v.shares.push_back({i, EvaluatePolynomial(poly, {i}, field)});
  }
  return v;
}

ShareVector ShamirShare(FieldElement secret, std::size_t t, std::size_t n,
                        const Field& field, RandomSource& rng) {
  RequireFieldLargerThan(field, n);
  std::vector<FieldElement> coeffs;
  coeffs.reserve(t);
  for (std::size_t k = 0; k < t; ++k) coeffs.push_back(rng.Element(field));
  return ShamirShareWithCoefficients(secret, coeffs, n, field);
}

FieldElement LagrangeAt(std::span<const Point> points, FieldElement x0,
                        const Field& field) {
  if (points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation needs a point");
  }
  const std::size_t k = points.size();
  std::vector<FieldElement> num(k, field.one());
  std::vector<FieldElement> den(k, field.one());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      FieldElement d = field.sub(points[a].x, points[b].x);
      if (d.value == 0) {
        throw Error(ErrorCode::kDuplicateX,
                    "x = " + std::to_string(points[a].x.value) + " repeated");
      }
      num[a] = field.mul(num[a], field.sub(x0, points[b].x));
      den[a] = field.mul(den[a], d);
    }
  }
  auto den_inv = BatchInverse(den, field);
  FieldElement acc = field.zero();
  for (std::size_t a = 0; a < k; ++a) {
    acc = field.add(acc, field.mul(points[a].y, field.mul(num[a], den_inv[a])));
  }
  return acc;
}

bool OnPolynomialOfDegree(std::span<const Point> points, std::size_t degree,
                          const Field& field) {
  if (points.size() <= degree + 1) return true;
  auto basis = points.first(degree + 1);
  for (const auto& p : points.subspan(degree + 1)) {
    if (LagrangeAt(basis, p.x, field) != p.y) return false;
  }
  return true;
}

FieldElement GroupZeroPolyWeight(std::span<const std::uint32_t> group,
                                 std::size_t t, std::size_t n, std::uint32_t i,
                                 const Field& field) {
  RequireFieldLargerThan(field, n);
  if (t == 0 || group.size() != n - t + 1) {
    throw Error(ErrorCode::kBadGroupSize,
                "group of size " + std::to_string(group.size()) +
                    ", expected n - t + 1 = " + std::to_string(n - t + 1));
  }
  if (!std::is_sorted(group.begin(), group.end()) ||
      std::adjacent_find(group.begin(), group.end()) != group.end() ||
      group.front() < 1 || group.back() > n) {
    throw Error(ErrorCode::kInvalidArgument, "group must be sorted in 1..n");
  }
  if (!std::binary_search(group.begin(), group.end(), i)) {
    throw Error(ErrorCode::kAgentNotInGroup,
                "agent " + std::to_string(i) + " not in group");
  }
  // Lagrange basis polynomial of the special point k over the nodes
  // {0} u (agents outside the group) u {k}, evaluated at i.
  const std::uint32_t k = group.front();
  std::vector<std::uint32_t> zeros{0};
  for (std::uint32_t x = 1; x <= n; ++x) {
    if (!std::binary_search(group.begin(), group.end(), x)) zeros.push_back(x);
  }
  FieldElement num = field.one();
  FieldElement den = field.one();
  for (std::uint32_t z : zeros) {
    num = field.mul(num, field.sub({i}, {z}));
    den = field.mul(den, field.sub({k}, {z}));
  }
  return field.mul(num, field.inv(den));
}

FieldElement GroupZeroPolyEval(std::span<const std::uint32_t> group,
                               std::size_t t, std::size_t n, FieldElement b,
                               std::uint32_t i, const Field& field) {
  return field.mul(b, GroupZeroPolyWeight(group, t, n, i, field));
}

}  // namespace pfsa
