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

// Line/token helpers shared by the text file formats.

#ifndef PFSA_TEXT_H_
#define PFSA_TEXT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pfsa {

std::vector<std::string_view> SplitLines(std::string_view text);
std::vector<std::string_view> SplitWords(std::string_view line);
std::vector<std::string_view> Split(std::string_view s, char sep);
std::string_view StripComment(std::string_view line);

std::string BytesToHex(std::span<const std::uint8_t> bytes);
// Throws kParseError on odd length or non-hex characters.
std::vector<std::uint8_t> HexToBytes(std::string_view hex);

// Throws kParseError unless `s` is a complete unsigned decimal number.
std::uint64_t ParseUint(std::string_view s);

}  // namespace pfsa

#endif  // PFSA_TEXT_H_
