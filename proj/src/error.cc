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

#include "pfsa/error.h"

namespace pfsa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kCompositeModulus: return "CompositeModulus";
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kWidthMismatch: return "WidthMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kPartialTransition: return "PartialTransition";
    case ErrorCode::kDuplicateTransition: return "DuplicateTransition";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kMissingShares: return "MissingShares";
    case ErrorCode::kNotEnoughShares: return "NotEnoughShares";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kDuplicateX: return "DuplicateX";
    case ErrorCode::kAgentNotInGroup: return "AgentNotInGroup";
    case ErrorCode::kBadGroupSize: return "BadGroupSize";
    case ErrorCode::kThresholdViolation: return "ThresholdViolation";
    case ErrorCode::kInvalidOneHot: return "InvalidOneHot";
    case ErrorCode::kNoFullSubset: return "NoFullSubset";
    case ErrorCode::kTickOutOfRange: return "TickOutOfRange";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kTooLargeToEnumerate: return "TooLargeToEnumerate";
    case ErrorCode::kStateFileCorrupt: return "StateFileCorrupt";
  }
  return "Unknown";
}

}  // namespace pfsa
