// Copyright 2026 The glyphkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace glyphkit::utf8 {

/// Decodes UTF-8 into Unicode scalar values. Ill-formed sequences decode to
/// U+FFFD, one replacement per offending byte.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

/// Number of Unicode scalar values in `text`.
std::size_t length(std::string_view text);

bool is_space(char32_t c);

/// Splits on runs of whitespace; leading/trailing whitespace yields no tokens.
std::vector<std::string> split_words(std::string_view text);

/// Simple one-to-one case folding (ASCII, Latin-1, Greek, Cyrillic).
char32_t fold_case(char32_t c);
std::string fold_case(std::string_view text);

}  // namespace glyphkit::utf8
