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

#ifndef PFSA_ERROR_H_
#define PFSA_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfsa {

enum class ErrorCode {
  kInvalidArgument,
  kCompositeModulus,
  kZeroInverse,
  kWidthMismatch,
  kParseError,
  kPartialTransition,
  kDuplicateTransition,
  kUnknownSymbol,
  kMissingShares,
  kNotEnoughShares,
  kFieldTooSmall,
  kDuplicateX,
  kAgentNotInGroup,
  kBadGroupSize,
  kThresholdViolation,
  kInvalidOneHot,
  kNoFullSubset,
  kTickOutOfRange,
  kInsufficientSamples,
  kTooLargeToEnumerate,
  kStateFileCorrupt,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception. The code is stable and
// is what callers (and tests) should branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pfsa

#endif  // PFSA_ERROR_H_
