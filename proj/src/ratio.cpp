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

#include "corpusstats/ratio.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "corpusstats/error.hpp"

namespace corpusstats {
namespace {

using u128 = unsigned __int128;

std::uint64_t pow10(int d) {
  std::uint64_t p = 1;
  for (int i = 0; i < d; ++i) p *= 10;
  return p;
}

std::vector<TermCounts> collect_counts(const TermStatsTable& table) {
  if (table.empty()) throw DataError("ratio analysis needs a non-empty table");
  std::vector<TermCounts> out;
  out.reserve(table.size());
  for (const auto& [term, counts] : table.entries()) {
    if (counts.df == 0) throw DataError("term '" + term + "' has df = 0");
    out.push_back(counts);
  }
  return out;
}

// Compensated sum (Neumaier).
double stable_sum(const std::vector<double>& values) {
  double sum = 0.0, comp = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

}  // namespace

std::string_view to_string(Rounding rounding) {
  switch (rounding) {
    case Rounding::two_decimals: return "two_decimals";
    case Rounding::one_decimal: return "one_decimal";
    case Rounding::integer: return "integer";
  }
  return "unknown";
}

int decimals(Rounding rounding) {
  switch (rounding) {
    case Rounding::two_decimals: return 2;
    case Rounding::one_decimal: return 1;
    case Rounding::integer: return 0;
  }
  return 0;
}

std::uint64_t ratio_bin(std::uint64_t tc, std::uint64_t df,
                        Rounding rounding) {
  if (df == 0) throw DataError("ratio undefined for df = 0");
  if (rounding == Rounding::integer) {
    const std::uint64_t q = tc / df;
    const std::uint64_t rem = tc % df;
    const u128 twice = static_cast<u128>(rem) * 2;
    if (twice > df || (twice == df && (q % 2 == 1))) return q + 1;
    return q;
  }
  // floor(tc * 10^d / df + 1/2) == floor((2 tc 10^d + df) / (2 df))
  const u128 scaled = static_cast<u128>(tc) * pow10(decimals(rounding));
  return static_cast<std::uint64_t>((2 * scaled + df) /
                                    (2 * static_cast<u128>(df)));
}

std::string RatioHistogram::label(std::uint64_t key) const {
  const int d = decimals(rounding);
  if (d == 0) return std::to_string(key);
  const std::uint64_t scale = pow10(d);
  std::string frac = std::to_string(key % scale);
  frac.insert(0, static_cast<std::size_t>(d) - frac.size(), '0');
  return std::to_string(key / scale) + "." + frac;
}

double RatioHistogram::value(std::uint64_t key) const {
  return static_cast<double>(key) /
         static_cast<double>(pow10(decimals(rounding)));
}

std::uint64_t RatioHistogram::mode() const {
  if (bins.empty()) throw DataError("empty histogram has no mode");
  auto best = bins.begin();
  for (auto it = bins.begin(); it != bins.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

RatioSummary ratio_summary(const TermStatsTable& table) {
  const auto counts = collect_counts(table);
  std::vector<double> ratios(counts.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(counts.size()); ++i) {
    ratios[i] = static_cast<double>(counts[i].tc) /
                static_cast<double>(counts[i].df);
  }
  // Sorting fixes the summation order, so the summary does not depend on
  // hash-map iteration order or thread count.
  std::sort(ratios.begin(), ratios.end());

  RatioSummary s;
  s.count = ratios.size();
  const double n = static_cast<double>(ratios.size());
  s.mean = stable_sum(ratios) / n;
  if (ratios.size() > 1) {
    std::vector<double> squares(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const double d = ratios[i] - s.mean;
      squares[i] = d * d;
    }
    s.stddev = std::sqrt(stable_sum(squares) / (n - 1.0));
  }
  const std::size_t mid = ratios.size() / 2;
  s.median = ratios.size() % 2 == 1 ? ratios[mid]
                                    : (ratios[mid - 1] + ratios[mid]) / 2.0;
  return s;
}

RatioHistogram ratio_histogram(const TermStatsTable& table,
                               Rounding rounding) {
  const auto counts = collect_counts(table);
  RatioHistogram hist;
  hist.rounding = rounding;

  const int threads = omp_get_max_threads();
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(
      static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(counts.size());
         ++i) {
      ++local[ratio_bin(counts[i].tc, counts[i].df, rounding)];
    }
  }
  for (const auto& local : partial) {
    for (const auto& [key, n] : local) hist.bins[key] += n;
  }
  hist.summary = ratio_summary(table);
  return hist;
}

void write_histogram(std::ostream& out, const RatioHistogram& hist) {
  for (const auto& [key, n] : hist.bins) {
    out << hist.label(key) << '\t' << n << '\n';
  }
}

}  // namespace corpusstats
