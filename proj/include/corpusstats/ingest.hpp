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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "corpusstats/text_io.hpp"
#include "corpusstats/tokenizer.hpp"

namespace corpusstats {

struct Document {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const Document&) const = default;
};

struct FrequencyListEntry {
  std::string term;
  std::uint64_t count = 0;
  bool lemmatized = false;

  bool operator==(const FrequencyListEntry&) const = default;
};

inline constexpr std::string_view kDefaultDocumentSeparator = "%%DOC%%";

struct CorpusConfig {
  TokenizerConfig tokenizer;
  // A line equal to the separator, or the separator followed by a space and
  // an explicit document id, starts a new document in stream mode.
  std::string separator = std::string(kDefaultDocumentSeparator);
};

// Streams documents out of a corpus container, one at a time.
//
// A directory is read as one document per `*.txt` file (ids are the file
// stems, visited in byte order of the file name). A regular file is read as
// a separator-delimited stream; documents without an explicit id are named
// "doc<ordinal>" with a 1-based ordinal.
class CorpusReader {
 public:
  CorpusReader(const std::filesystem::path& source, CorpusConfig config = {});
  ~CorpusReader();
  CorpusReader(CorpusReader&&) noexcept;
  CorpusReader& operator=(CorpusReader&&) noexcept;

  std::optional<Document> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<Document> read_corpus(const std::filesystem::path& source,
                                  const CorpusConfig& config = {});

// Streams `term<TAB>count[<TAB>L]` entries. Lines beginning with '#' and
// blank lines are skipped.
class FrequencyListReader {
 public:
  enum class Format {
    frequency_list,  // optional third column "L" marks lemmatized entries
    ngram_counts,    // exactly two columns
  };

  FrequencyListReader(const std::filesystem::path& source, Format format);

  // Returns the next well-formed entry regardless of filters. Throws
  // ParseError on malformed lines and on a repeated (term, lemmatized) key.
  std::optional<FrequencyListEntry> next();

  std::size_t line_number() const { return reader_.line_number(); }

 private:
  LineReader reader_;
  Format format_;
  std::unordered_set<std::string> seen_plain_;
  std::unordered_set<std::string> seen_lemma_;
  std::string line_;
};

std::vector<FrequencyListEntry> parse_frequency_list(
    const std::filesystem::path& source, bool keep_lemmatized);

// Unigram count file; entries with count >= min_count survive, in input
// order.
std::vector<FrequencyListEntry> parse_ngram_counts(
    const std::filesystem::path& source, std::uint64_t min_count);

// Writes entries in the frequency-list format parse_frequency_list reads.
void write_frequency_list(std::ostream& out,
                          std::span<const FrequencyListEntry> entries);
void write_frequency_list(const std::filesystem::path& path,
                          std::span<const FrequencyListEntry> entries);

}  // namespace corpusstats
