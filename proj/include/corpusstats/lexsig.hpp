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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "corpusstats/ingest.hpp"
#include "corpusstats/stats.hpp"

namespace corpusstats {

enum class DfMode {
  measured_df,  // document frequencies as counted
  tc_as_df,     // term counts stand in for document frequencies
};

enum class TfMode {
  raw,                // occurrence count
  length_normalized,  // occurrence count / document length
};

// Background statistics for IDF. Immutable once built; safe to share
// across threads.
class BackgroundModel {
 public:
  // N-hat defaults to the table's document count. A supplied estimate must
  // be >= 1 and, under measured_df, >= the largest df in the table.
  static BackgroundModel from_table(
      const TermStatsTable& table, DfMode mode,
      std::optional<std::uint64_t> doc_count_estimate = std::nullopt);

  // TC-only list: tc_as_df is the only possible mode and N-hat has to be
  // supplied by the caller.
  static BackgroundModel from_frequency_list(
      std::span<const FrequencyListEntry> entries,
      std::uint64_t doc_count_estimate);

  DfMode df_mode() const { return mode_; }
  std::uint64_t doc_count_estimate() const { return doc_count_; }
  std::size_t vocabulary_size() const { return evidence_.size(); }

  // min(df or tc, N-hat); 0 for unseen terms.
  std::uint64_t df_estimate(const std::string& term) const;

 private:
  BackgroundModel(std::unordered_map<std::string, std::uint64_t> evidence,
                  std::uint64_t doc_count, DfMode mode);

  std::unordered_map<std::string, std::uint64_t> evidence_;
  std::uint64_t doc_count_;
  DfMode mode_;
};

// max(0, log10((N-hat + 1) / (df-hat + 1))).
double idf(const std::string& term, const BackgroundModel& model);

std::uint64_t tf(const std::string& term, const Document& document);
double tf_idf(const std::string& term, const Document& document,
              const BackgroundModel& model, TfMode mode = TfMode::raw);

struct WeightedTerm {
  std::string term;
  double weight = 0.0;

  bool operator==(const WeightedTerm&) const = default;
};

// Top-k terms by TF-IDF, weights non-increasing, equal weights in ascending
// term order.
struct LexicalSignature {
  std::string doc_id;
  std::vector<WeightedTerm> terms;

  bool operator==(const LexicalSignature&) const = default;
};

// Throws DataError when k == 0. An empty document yields an empty
// signature.
LexicalSignature lexical_signature(const Document& document,
                                   const BackgroundModel& model, std::size_t k,
                                   TfMode mode = TfMode::raw);

// One signature per document, computed in parallel.
std::vector<LexicalSignature> lexical_signatures(
    std::span<const Document> documents, const BackgroundModel& model,
    std::size_t k, TfMode mode = TfMode::raw);

struct RankShift {
  std::string term;
  std::optional<std::size_t> position_a;  // 1-based, absent if not selected
  std::optional<std::size_t> position_b;
  bool dropped = false;  // worse or missing under model b
};

struct SignatureComparison {
  std::string doc_id;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  std::size_t overlap = 0;
  // Kendall tau-b between the two weight orderings of the shared terms;
  // absent with fewer than two shared terms or a constant weight vector.
  std::optional<double> tau_b;
  std::vector<RankShift> shifts;  // terms whose position differs
};

std::vector<SignatureComparison> compare_signatures(
    const BackgroundModel& model_a, const BackgroundModel& model_b,
    std::span<const Document> documents, std::size_t k,
    TfMode mode = TfMode::raw);

// `doc_id<TAB>term<TAB>weight` rows.
void write_signatures(std::ostream& out,
                      std::span<const LexicalSignature> signatures);
// `doc_id: t1 t2 ... tk` lines.
void write_signatures_compact(std::ostream& out,
                              std::span<const LexicalSignature> signatures);
// `doc_id<TAB>overlap<TAB>size_a<TAB>size_b<TAB>tau_b<TAB>dropped` rows;
// tau_b is "NA" when undefined and dropped lists terms space-separated.
void write_signature_comparison(
    std::ostream& out, std::span<const SignatureComparison> comparisons);

}  // namespace corpusstats
