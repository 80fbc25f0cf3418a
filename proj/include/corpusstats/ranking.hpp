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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "corpusstats/stats.hpp"

namespace corpusstats {

struct TermValue {
  std::string term;
  std::uint64_t value = 0;
};

struct RankedItem {
  std::string term;
  std::uint64_t value = 0;
  std::uint64_t rank = 0;

  bool operator==(const RankedItem&) const = default;
};

// Items by descending value; ties share the minimum rank (1, 2, 2, 4) and
// are presented in ascending term order.
struct RankedList {
  std::vector<RankedItem> items;
};

// Standard competition ranks of `values` under descending order:
// rank(i) = 1 + |{j : values[j] > values[i]}|.
std::vector<std::uint64_t> competition_ranks(
    std::span<const std::uint64_t> values);

// Throws DataError on a repeated term.
RankedList sports_rank(std::span<const TermValue> pairs);

std::vector<TermValue> term_values(const TermStatsTable& table,
                                   CountKind which);
std::vector<TermValue> term_values(std::span<const FrequencyListEntry> entries);

struct OverlapResult {
  std::size_t union_size = 0;
  std::size_t intersection_size = 0;

  bool operator==(const OverlapResult&) const = default;
};

// Set sizes over the terms whose rank lies in [from_rank, to_rank] in each
// list. Throws DataError unless 1 <= from_rank <= to_rank.
OverlapResult ranking_overlap(const RankedList& a, const RankedList& b,
                              std::uint64_t from_rank, std::uint64_t to_rank);

// One (tc rank, df rank) pair per term, ordered by tc rank and then term.
// Ranks are stored as doubles so they feed the correlation kernels
// directly; every value is an exact integer.
struct AlignedRanks {
  std::vector<std::string> terms;
  std::vector<double> tc_rank;
  std::vector<double> df_rank;

  std::size_t size() const { return terms.size(); }
};

// Throws DataError on an empty table.
AlignedRanks align_ranks(const TermStatsTable& table);

void write_ranked_list(std::ostream& out, const RankedList& list);
void write_rank_scatter(std::ostream& out, const AlignedRanks& ranks);

}  // namespace corpusstats
