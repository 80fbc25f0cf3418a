// Copyright 2026 The corpusstats Authors.
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

namespace corpusstats {

// Token normalization rules. The defaults split on Unicode white space,
// trim punctuation from both ends of each token and apply simple case
// folding. No stemming is ever applied.
struct TokenizerConfig {
  bool case_fold = true;
  bool strip_punctuation = true;
  // When set, apostrophes (U+0027, U+2019) inside a token are deleted too,
  // turning "can't" into "cant".
  bool drop_internal_apostrophes = false;

  bool operator==(const TokenizerConfig&) const = default;
};

// Splits UTF-8 text into normalized tokens. Invalid byte sequences decode
// to U+FFFD so the output is always valid UTF-8.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config = {});

// Appends the tokens of `text` to `out`.
void tokenize_into(std::string_view text, const TokenizerConfig& config,
                   std::vector<std::string>& out);

}  // namespace corpusstats
