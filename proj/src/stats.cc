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

#include "pfsa/stats.h"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>

#include "pfsa/error.h"

namespace pfsa {

double ChiSquarePValue(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult ChiSquareGoodnessOfFit(std::span<const std::uint64_t> observed,
                                       std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cell count mismatch");
  }
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  ChiSquareResult r;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (probabilities[k] <= 0) continue;
    double expected = total * probabilities[k];
    double diff = static_cast<double>(observed[k]) - expected;
    r.statistic += diff * diff / expected;
    ++cells;
  }
  r.dof = cells > 0 ? static_cast<double>(cells - 1) : 0;
  r.p_value = ChiSquarePValue(r.statistic, r.dof);
  return r;
}

ChiSquareResult ChiSquareTwoSample(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cell count mismatch");
  }
  double na = 0, nb = 0;
  for (auto v : a) na += static_cast<double>(v);
  for (auto v : b) nb += static_cast<double>(v);
  ChiSquareResult r;
  if (na == 0 || nb == 0) return r;
  const double n = na + nb;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double col = static_cast<double>(a[k] + b[k]);
    if (col == 0) continue;
    const double ea = na * col / n;
    const double eb = nb * col / n;
    const double da = static_cast<double>(a[k]) - ea;
    const double db = static_cast<double>(b[k]) - eb;
    r.statistic += da * da / ea + db * db / eb;
    ++cells;
  }
  r.dof = cells > 0 ? static_cast<double>(cells - 1) : 0;
  r.p_value = ChiSquarePValue(r.statistic, r.dof);
  return r;
}

double BonferroniCombine(std::span<const double> p_values) {
  if (p_values.empty()) return 1.0;
  double lo = *std::min_element(p_values.begin(), p_values.end());
  return std::min(1.0, lo * static_cast<double>(p_values.size()));
}

}  // namespace pfsa
