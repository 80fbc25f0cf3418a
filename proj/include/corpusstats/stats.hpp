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
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpusstats/ingest.hpp"

namespace corpusstats {

struct TermCounts {
  std::uint64_t tc = 0;  // occurrences across the corpus
  std::uint64_t df = 0;  // documents containing the term

  bool operator==(const TermCounts&) const = default;
};

// Per-term TC and DF plus the number of documents N they were drawn from.
//
// Invariants: 1 <= df <= tc for every term and df <= doc_count. Tables are
// built once and then only read, so concurrent readers need no locking.
class TermStatsTable {
 public:
  using Map = std::unordered_map<std::string, TermCounts>;

  TermStatsTable() = default;

  std::uint64_t doc_count() const { return doc_count_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Map& entries() const { return entries_; }

  // nullptr for unseen terms.
  const TermCounts* find(const std::string& term) const;

  // Entries in ascending byte order of the term.
  std::vector<std::pair<std::string_view, TermCounts>> sorted() const;

  // Adds a new term. Throws DataError on a repeated term or when
  // 1 <= df <= tc does not hold.
  void insert(std::string term, TermCounts counts);
  void set_doc_count(std::uint64_t n) { doc_count_ = n; }

  // Checks df <= doc_count for every term. Throws DataError naming the
  // first offending term.
  void validate() const;

  bool operator==(const TermStatsTable&) const = default;

 private:
  friend class StatsAccumulator;
  friend TermStatsTable merge(const TermStatsTable&, const TermStatsTable&);
  friend void merge_into(TermStatsTable&, const TermStatsTable&);

  Map entries_;
  std::uint64_t doc_count_ = 0;
};

// Incremental single-threaded TC/DF counter.
class StatsAccumulator {
 public:
  void add(const Document& doc);
  void add(std::span<const std::string> tokens);
  TermStatsTable finish() &&;

 private:
  struct Slot {
    TermCounts counts;
    std::uint64_t last_doc = 0;  // 1-based ordinal of the last document seen
  };
  std::unordered_map<std::string, Slot> slots_;
  std::uint64_t docs_ = 0;
};

// Reference implementation: one pass over the documents in order.
TermStatsTable compute_tc_df_serial(std::span<const Document> documents);

// Shards documents across `jobs` OpenMP threads (0 = runtime default) and
// merges the partial tables. Equal to compute_tc_df_serial on every input.
// Throws DataError on a duplicate document id.
TermStatsTable compute_tc_df(std::span<const Document> documents,
                             int jobs = 0);

// Sums two tables built from disjoint document sets.
TermStatsTable merge(const TermStatsTable& a, const TermStatsTable& b);
void merge_into(TermStatsTable& into, const TermStatsTable& from);

enum class CountKind { tc, df };

// count value -> number of terms carrying it. Throws DataError on empty
// input.
std::map<std::uint64_t, std::uint64_t> frequency_of_frequencies(
    const TermStatsTable& table, CountKind which);
std::map<std::uint64_t, std::uint64_t> frequency_of_frequencies(
    std::span<const FrequencyListEntry> entries);

// `#N=<doc_count>` header followed by term-sorted `term<TAB>tc<TAB>df`
// lines.
void write_stats(std::ostream& out, const TermStatsTable& table);
void write_stats(const std::filesystem::path& path,
                 const TermStatsTable& table);
TermStatsTable read_stats(const std::filesystem::path& path);

void write_frequency_of_frequencies(
    std::ostream& out, const std::map<std::uint64_t, std::uint64_t>& ffreq);

}  // namespace corpusstats
