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

#include "corpusstats/lexsig.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <unordered_map>

#include "corpusstats/correlation.hpp"
#include "corpusstats/error.hpp"
#include "corpusstats/text_io.hpp"

namespace corpusstats {

BackgroundModel::BackgroundModel(
    std::unordered_map<std::string, std::uint64_t> evidence,
    std::uint64_t doc_count, DfMode mode)
    : evidence_(std::move(evidence)), doc_count_(doc_count), mode_(mode) {}

BackgroundModel BackgroundModel::from_table(
    const TermStatsTable& table, DfMode mode,
    std::optional<std::uint64_t> doc_count_estimate) {
  const std::uint64_t n = doc_count_estimate.value_or(table.doc_count());
  if (n == 0) {
    throw DataError("background model needs a document count estimate >= 1");
  }
  std::unordered_map<std::string, std::uint64_t> evidence;
  evidence.reserve(table.size());
  for (const auto& [term, counts] : table.entries()) {
    if (mode == DfMode::measured_df && counts.df > n) {
      throw DataError("document count estimate " + std::to_string(n) +
                      " is below df=" + std::to_string(counts.df) +
                      " of term '" + term + "'");
    }
    evidence.emplace(term, mode == DfMode::measured_df ? counts.df : counts.tc);
  }
  return BackgroundModel(std::move(evidence), n, mode);
}

BackgroundModel BackgroundModel::from_frequency_list(
    std::span<const FrequencyListEntry> entries,
    std::uint64_t doc_count_estimate) {
  if (doc_count_estimate == 0) {
    throw DataError(
        "a term-count list carries no document count; supply an estimate "
        ">= 1");
  }
  std::unordered_map<std::string, std::uint64_t> evidence;
  evidence.reserve(entries.size());
  for (const auto& e : entries) {
    if (!evidence.emplace(e.term, e.count).second) {
      throw DataError("duplicate term '" + e.term + "' in background list");
    }
  }
  return BackgroundModel(std::move(evidence), doc_count_estimate,
                         DfMode::tc_as_df);
}

std::uint64_t BackgroundModel::df_estimate(const std::string& term) const {
  const auto it = evidence_.find(term);
  if (it == evidence_.end()) return 0;
  return std::min(it->second, doc_count_);
}

double idf(const std::string& term, const BackgroundModel& model) {
  const double n = static_cast<double>(model.doc_count_estimate());
  const double df = static_cast<double>(model.df_estimate(term));
  return std::max(0.0, std::log10((n + 1.0) / (df + 1.0)));
}

std::uint64_t tf(const std::string& term, const Document& document) {
  return static_cast<std::uint64_t>(
      std::count(document.tokens.begin(), document.tokens.end(), term));
}

double tf_idf(const std::string& term, const Document& document,
              const BackgroundModel& model, TfMode mode) {
  const auto count = tf(term, document);
  if (count == 0) return 0.0;
  double weight = static_cast<double>(count);
  if (mode == TfMode::length_normalized) {
    weight /= static_cast<double>(document.tokens.size());
  }
  return weight * idf(term, model);
}

LexicalSignature lexical_signature(const Document& document,
                                   const BackgroundModel& model, std::size_t k,
                                   TfMode mode) {
  if (k == 0) throw DataError("signature length k must be >= 1");
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& token : document.tokens) ++counts[token];

  std::vector<WeightedTerm> candidates;
  candidates.reserve(counts.size());
  const double length = static_cast<double>(document.tokens.size());
  for (const auto& [term, count] : counts) {
    std::string t(term);
    double weight = static_cast<double>(count);
    if (mode == TfMode::length_normalized) weight /= length;
    weight *= idf(t, model);
    candidates.push_back({std::move(t), weight});
  }
  const auto better = [](const WeightedTerm& a, const WeightedTerm& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.term < b.term;
  };
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(),
                    candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), better);
  candidates.resize(keep);
  return {document.id, std::move(candidates)};
}

std::vector<LexicalSignature> lexical_signatures(
    std::span<const Document> documents, const BackgroundModel& model,
    std::size_t k, TfMode mode) {
  if (k == 0) throw DataError("signature length k must be >= 1");
  std::vector<LexicalSignature> out(documents.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(documents.size());
       ++i) {
    try {
      out[i] = lexical_signature(documents[i], model, k, mode);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

SignatureComparison compare_one(const LexicalSignature& a,
                                const LexicalSignature& b) {
  SignatureComparison cmp;
  cmp.doc_id = a.doc_id;
  cmp.size_a = a.terms.size();
  cmp.size_b = b.terms.size();

  std::unordered_map<std::string_view, std::size_t> pos_b;
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    pos_b.emplace(b.terms[i].term, i);
  }
  std::vector<double> shared_a, shared_b;
  std::unordered_map<std::string_view, std::size_t> pos_a;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    pos_a.emplace(a.terms[i].term, i);
    const auto it = pos_b.find(a.terms[i].term);
    RankShift shift{a.terms[i].term, i + 1, std::nullopt, true};
    if (it != pos_b.end()) {
      ++cmp.overlap;
      shared_a.push_back(a.terms[i].weight);
      shared_b.push_back(b.terms[it->second].weight);
      shift.position_b = it->second + 1;
      shift.dropped = it->second > i;
      if (it->second == i) continue;
    }
    cmp.shifts.push_back(std::move(shift));
  }
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    if (!pos_a.count(b.terms[i].term)) {
      cmp.shifts.push_back({b.terms[i].term, std::nullopt, i + 1, false});
    }
  }
  if (shared_a.size() >= 2) {
    try {
      cmp.tau_b = kendall_tau_fast(shared_a, shared_b).tau_b;
    } catch (const DegenerateInputError&) {
    }
  }
  return cmp;
}

}  // namespace

std::vector<SignatureComparison> compare_signatures(
    const BackgroundModel& model_a, const BackgroundModel& model_b,
    std::span<const Document> documents, std::size_t k, TfMode mode) {
  const auto sig_a = lexical_signatures(documents, model_a, k, mode);
  const auto sig_b = lexical_signatures(documents, model_b, k, mode);
  std::vector<SignatureComparison> out;
  out.reserve(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    out.push_back(compare_one(sig_a[i], sig_b[i]));
  }
  return out;
}

void write_signatures(std::ostream& out,
                      std::span<const LexicalSignature> signatures) {
  for (const auto& sig : signatures) {
    for (const auto& t : sig.terms) {
      out << sig.doc_id << '\t' << t.term << '\t' << format_double(t.weight)
          << '\n';
    }
  }
}

void write_signatures_compact(std::ostream& out,
                              std::span<const LexicalSignature> signatures) {
  for (const auto& sig : signatures) {
    out << sig.doc_id << ':';
    for (const auto& t : sig.terms) out << ' ' << t.term;
    out << '\n';
  }
}

void write_signature_comparison(
    std::ostream& out, std::span<const SignatureComparison> comparisons) {
  for (const auto& c : comparisons) {
    out << c.doc_id << '\t' << c.overlap << '\t' << c.size_a << '\t'
        << c.size_b << '\t' << (c.tau_b ? format_double(*c.tau_b) : "NA")
        << '\t';
    bool first = true;
    for (const auto& s : c.shifts) {
      if (!s.dropped) continue;
      if (!first) out << ' ';
      out << s.term;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace corpusstats
