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

#include "corpusstats/stats.hpp"

#include <omp.h>

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include "corpusstats/error.hpp"
#include "corpusstats/text_io.hpp"

namespace corpusstats {

const TermCounts* TermStatsTable::find(const std::string& term) const {
  const auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string_view, TermCounts>> TermStatsTable::sorted()
    const {
  std::vector<std::pair<std::string_view, TermCounts>> out;
  out.reserve(entries_.size());
  for (const auto& [term, counts] : entries_) out.emplace_back(term, counts);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void TermStatsTable::insert(std::string term, TermCounts counts) {
  if (counts.df == 0 || counts.df > counts.tc) {
    throw DataError("term '" + term + "': need 1 <= df <= tc, got tc=" +
                    std::to_string(counts.tc) +
                    " df=" + std::to_string(counts.df));
  }
  const auto [it, inserted] = entries_.emplace(std::move(term), counts);
  if (!inserted) throw DataError("duplicate term '" + it->first + "'");
}

void TermStatsTable::validate() const {
  for (const auto& [term, counts] : entries_) {
    if (counts.df == 0 || counts.df > counts.tc) {
      throw DataError("term '" + term + "': need 1 <= df <= tc");
    }
    if (counts.df > doc_count_) {
      throw DataError("term '" + term + "': df=" + std::to_string(counts.df) +
                      " exceeds N=" + std::to_string(doc_count_));
    }
  }
}

void StatsAccumulator::add(const Document& doc) { add(doc.tokens); }

void StatsAccumulator::add(std::span<const std::string> tokens) {
  ++docs_;
  for (const auto& token : tokens) {
    auto& slot = slots_[token];
    slot.counts.tc = checked_add(slot.counts.tc, 1);
    if (slot.last_doc != docs_) {
      slot.last_doc = docs_;
      ++slot.counts.df;
    }
  }
}

TermStatsTable StatsAccumulator::finish() && {
  TermStatsTable table;
  table.doc_count_ = docs_;
  table.entries_.reserve(slots_.size());
  for (auto& [term, slot] : slots_) {
    table.entries_.emplace(term, slot.counts);
  }
  slots_.clear();
  return table;
}

namespace {

void check_unique_ids(std::span<const Document> documents) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(documents.size());
  for (const auto& doc : documents) {
    if (!ids.insert(doc.id).second) {
      throw DataError("duplicate document id '" + doc.id + "'");
    }
  }
}

}  // namespace

TermStatsTable compute_tc_df_serial(std::span<const Document> documents) {
  check_unique_ids(documents);
  StatsAccumulator acc;
  for (const auto& doc : documents) acc.add(doc);
  return std::move(acc).finish();
}

TermStatsTable compute_tc_df(std::span<const Document> documents, int jobs) {
  check_unique_ids(documents);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  const auto shards = static_cast<std::size_t>(
      std::clamp<std::size_t>(documents.size() / 64, 1,
                              static_cast<std::size_t>(threads)));
  if (shards == 1) {
    StatsAccumulator acc;
    for (const auto& doc : documents) acc.add(doc);
    return std::move(acc).finish();
  }

  std::vector<TermStatsTable> partials(shards);
  std::exception_ptr failure;
#pragma omp parallel for num_threads(threads) schedule(static, 1)
  for (std::size_t s = 0; s < shards; ++s) {
    try {
      const std::size_t begin = documents.size() * s / shards;
      const std::size_t end = documents.size() * (s + 1) / shards;
      StatsAccumulator acc;
      for (std::size_t i = begin; i < end; ++i) acc.add(documents[i]);
      partials[s] = std::move(acc).finish();
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Pairwise tree reduction.
  for (std::size_t stride = 1; stride < shards; stride *= 2) {
#pragma omp parallel for num_threads(threads) schedule(static, 1)
    for (std::size_t s = 0; s < shards; s += 2 * stride) {
      if (s + stride < shards) {
        try {
          merge_into(partials[s], partials[s + stride]);
        } catch (...) {
#pragma omp critical
          if (!failure) failure = std::current_exception();
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return std::move(partials[0]);
}

void merge_into(TermStatsTable& into, const TermStatsTable& from) {
  into.doc_count_ = checked_add(into.doc_count_, from.doc_count_);
  for (const auto& [term, counts] : from.entries_) {
    auto& slot = into.entries_[term];
    slot.tc = checked_add(slot.tc, counts.tc);
    slot.df = checked_add(slot.df, counts.df);
  }
}

TermStatsTable merge(const TermStatsTable& a, const TermStatsTable& b) {
  TermStatsTable out = a;
  merge_into(out, b);
  return out;
}

std::map<std::uint64_t, std::uint64_t> frequency_of_frequencies(
    const TermStatsTable& table, CountKind which) {
  if (table.empty()) {
    throw DataError("frequency of frequencies needs a non-empty table");
  }
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& [term, counts] : table.entries()) {
    ++out[which == CountKind::tc ? counts.tc : counts.df];
  }
  return out;
}

std::map<std::uint64_t, std::uint64_t> frequency_of_frequencies(
    std::span<const FrequencyListEntry> entries) {
  if (entries.empty()) {
    throw DataError("frequency of frequencies needs a non-empty list");
  }
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& e : entries) ++out[e.count];
  return out;
}

void write_stats(std::ostream& out, const TermStatsTable& table) {
  out << "#N=" << table.doc_count() << '\n';
  for (const auto& [term, counts] : table.sorted()) {
    if (term.find_first_of("\t\n\r") != std::string_view::npos) {
      throw DataError("term '" + std::string(term) +
                      "' contains a tab or newline and cannot be written");
    }
    out << term << '\t' << counts.tc << '\t' << counts.df << '\n';
  }
}

void write_stats(const std::filesystem::path& path,
                 const TermStatsTable& table) {
  OutputFile file(path.string());
  write_stats(file.stream(), table);
  file.close();
}

TermStatsTable read_stats(const std::filesystem::path& path) {
  LineReader reader(path.string());
  std::string line;
  if (!reader.next(line) || line.rfind("#N=", 0) != 0) {
    throw ParseError(path.string(), reader.line_number(),
                     "missing '#N=<doc_count>' header");
  }
  TermStatsTable table;
  table.set_doc_count(parse_count(std::string_view(line).substr(3),
                                  path.string(), reader.line_number()));
  while (reader.next(line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3 || fields[0].empty()) {
      throw ParseError(path.string(), reader.line_number(),
                       "expected term<TAB>tc<TAB>df");
    }
    TermCounts counts;
    counts.tc = parse_count(fields[1], path.string(), reader.line_number());
    counts.df = parse_count(fields[2], path.string(), reader.line_number());
    if (counts.df > table.doc_count()) {
      throw ParseError(path.string(), reader.line_number(),
                       "df exceeds N for '" + std::string(fields[0]) + "'");
    }
    try {
      table.insert(std::string(fields[0]), counts);
    } catch (const DataError& e) {
      throw ParseError(path.string(), reader.line_number(), e.what());
    }
  }
  return table;
}

void write_frequency_of_frequencies(
    std::ostream& out, const std::map<std::uint64_t, std::uint64_t>& ffreq) {
  for (const auto& [count, terms] : ffreq) {
    out << count << '\t' << terms << '\n';
  }
}

}  // namespace corpusstats
