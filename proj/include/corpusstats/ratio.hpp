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
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include "corpusstats/stats.hpp"

namespace corpusstats {

enum class Rounding { two_decimals, one_decimal, integer };

std::string_view to_string(Rounding rounding);

// Decimal places kept by `rounding`.
int decimals(Rounding rounding);

// Bin key of tc/df in units of 10^-decimals, from exact integer arithmetic.
// Decimal modes round half up; integer mode rounds half to even.
std::uint64_t ratio_bin(std::uint64_t tc, std::uint64_t df, Rounding rounding);

// Statistics of the unrounded ratios; independent of any binning.
struct RatioSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1); 0 when n == 1
  double median = 0.0;

  bool operator==(const RatioSummary&) const = default;
};

struct RatioHistogram {
  Rounding rounding = Rounding::two_decimals;
  std::map<std::uint64_t, std::uint64_t> bins;  // bin key -> term count
  RatioSummary summary;

  // "1.25", "1.3", "1" style label of a bin key.
  std::string label(std::uint64_t key) const;
  double value(std::uint64_t key) const;
  // Most populated bin; the smallest key wins a tie.
  std::uint64_t mode() const;
};

// Throws DataError on an empty table.
RatioSummary ratio_summary(const TermStatsTable& table);
RatioHistogram ratio_histogram(const TermStatsTable& table, Rounding rounding);

// `ratio<TAB>term_count` rows in ascending ratio order.
void write_histogram(std::ostream& out, const RatioHistogram& hist);

}  // namespace corpusstats
