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

#ifndef PFSA_STATS_H_
#define PFSA_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pfsa {

// Upper tail P(X >= statistic) for X ~ chi-square(dof). dof == 0 gives 1.
double ChiSquarePValue(double statistic, double dof);

struct ChiSquareResult {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

// Goodness of fit of `observed` counts against cell probabilities.
// Cells with zero expected probability are ignored.
ChiSquareResult ChiSquareGoodnessOfFit(std::span<const std::uint64_t> observed,
                                       std::span<const double> probabilities);

// Two-sample homogeneity test on a 2 x k contingency table. Cells empty in
// both samples are dropped.
ChiSquareResult ChiSquareTwoSample(std::span<const std::uint64_t> a,
                                   std::span<const std::uint64_t> b);

// min(1, k * min p): Bonferroni-combined p-value of k tests.
double BonferroniCombine(std::span<const double> p_values);

}  // namespace pfsa

#endif  // PFSA_STATS_H_
