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

#include "corpusstats/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <string_view>
#include <unordered_set>

#include "corpusstats/error.hpp"

namespace corpusstats {

std::vector<std::uint64_t> competition_ranks(
    std::span<const std::uint64_t> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  std::vector<std::uint64_t> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const bool tied = pos > 0 && values[order[pos]] == values[order[pos - 1]];
    ranks[order[pos]] = tied ? ranks[order[pos - 1]] : pos + 1;
  }
  return ranks;
}

RankedList sports_rank(std::span<const TermValue> pairs) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (!seen.insert(p.term).second) {
      throw DataError("duplicate term '" + p.term + "' in ranking input");
    }
  }
  RankedList list;
  list.items.reserve(pairs.size());
  for (const auto& p : pairs) list.items.push_back({p.term, p.value, 0});
  std::sort(list.items.begin(), list.items.end(),
            [](const RankedItem& a, const RankedItem& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.term < b.term;
            });
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    auto& item = list.items[i];
    item.rank = (i > 0 && item.value == list.items[i - 1].value)
                    ? list.items[i - 1].rank
                    : i + 1;
  }
  return list;
}

std::vector<TermValue> term_values(const TermStatsTable& table,
                                   CountKind which) {
  std::vector<TermValue> out;
  out.reserve(table.size());
  for (const auto& [term, counts] : table.entries()) {
    out.push_back({term, which == CountKind::tc ? counts.tc : counts.df});
  }
  return out;
}

std::vector<TermValue> term_values(
    std::span<const FrequencyListEntry> entries) {
  std::vector<TermValue> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back({e.term, e.count});
  return out;
}

OverlapResult ranking_overlap(const RankedList& a, const RankedList& b,
                              std::uint64_t from_rank, std::uint64_t to_rank) {
  if (from_rank < 1 || from_rank > to_rank) {
    throw DataError("rank window needs 1 <= from <= to, got [" +
                    std::to_string(from_rank) + ", " +
                    std::to_string(to_rank) + "]");
  }
  auto window = [&](const RankedList& list) {
    std::unordered_set<std::string_view> terms;
    for (const auto& item : list.items) {
      if (item.rank >= from_rank && item.rank <= to_rank) {
        terms.insert(item.term);
      }
    }
    return terms;
  };
  const auto wa = window(a);
  const auto wb = window(b);
  OverlapResult result;
  for (const auto& t : wa) {
    if (wb.count(t)) ++result.intersection_size;
  }
  result.union_size = wa.size() + wb.size() - result.intersection_size;
  return result;
}

AlignedRanks align_ranks(const TermStatsTable& table) {
  if (table.empty()) throw DataError("cannot align ranks of an empty table");
  const auto sorted = table.sorted();
  std::vector<std::uint64_t> tc(sorted.size());
  std::vector<std::uint64_t> df(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    tc[i] = sorted[i].second.tc;
    df[i] = sorted[i].second.df;
  }
  const auto tc_ranks = competition_ranks(tc);
  const auto df_ranks = competition_ranks(df);

  // `sorted` is term-ascending, so a stable sort on tc rank keeps terms
  // ascending inside each tie group.
  std::vector<std::size_t> order(sorted.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return tc_ranks[a] < tc_ranks[b];
                   });
  AlignedRanks out;
  out.terms.reserve(order.size());
  out.tc_rank.reserve(order.size());
  out.df_rank.reserve(order.size());
  for (const auto i : order) {
    out.terms.emplace_back(sorted[i].first);
    out.tc_rank.push_back(static_cast<double>(tc_ranks[i]));
    out.df_rank.push_back(static_cast<double>(df_ranks[i]));
  }
  return out;
}

void write_ranked_list(std::ostream& out, const RankedList& list) {
  for (const auto& item : list.items) {
    out << item.term << '\t' << item.value << '\t' << item.rank << '\n';
  }
}

void write_rank_scatter(std::ostream& out, const AlignedRanks& ranks) {
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    out << static_cast<std::uint64_t>(ranks.tc_rank[i]) << '\t'
        << static_cast<std::uint64_t>(ranks.df_rank[i]) << '\n';
  }
}

}  // namespace corpusstats
