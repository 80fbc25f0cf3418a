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

#include "corpusstats/tokenizer.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace corpusstats {
namespace {

bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

// Normalizes one white-space delimited run of code points.
void emit_token(const std::vector<UChar32>& raw, const TokenizerConfig& config,
                std::vector<std::string>& out) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  if (config.strip_punctuation) {
    while (begin < end && u_ispunct(raw[begin])) ++begin;
    while (end > begin && u_ispunct(raw[end - 1])) --end;
  }
  if (begin == end) return;

  std::string token;
  token.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    UChar32 c = raw[i];
    if (config.drop_internal_apostrophes && is_apostrophe(c)) continue;
    if (config.case_fold) c = u_foldCase(c, U_FOLD_CASE_DEFAULT);
    append_utf8(token, c);
  }
  if (!token.empty()) out.push_back(std::move(token));
}

}  // namespace

void tokenize_into(std::string_view text, const TokenizerConfig& config,
                   std::vector<std::string>& out) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  std::vector<UChar32> current;
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) c = 0xFFFD;
    if (u_isUWhiteSpace(c)) {
      if (!current.empty()) {
        emit_token(current, config, out);
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) emit_token(current, config, out);
}

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerConfig& config) {
  std::vector<std::string> out;
  tokenize_into(text, config, out);
  return out;
}

}  // namespace corpusstats
