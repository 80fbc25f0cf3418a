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
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

namespace corpusstats {

enum class KendallKernel { naive, fast };

std::string_view to_string(KendallKernel kernel);

struct TimingPoint {
  std::uint64_t n = 0;
  double seconds = 0.0;
};

// t ~ coefficient * n^exponent, fitted by least squares on (log n, log t).
struct PowerFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;  // log t - log(predicted), per point
};

struct TimingCurve {
  KendallKernel kernel = KendallKernel::fast;
  std::vector<TimingPoint> points;
  std::optional<PowerFit> fit;
  std::map<std::uint64_t, double> extrapolations;
  // Set when a size was abandoned because it exceeded the time budget.
  bool truncated = false;
  int threads = 1;
};

// Correlated rank-like pairs with ties, a pure function of (n, seed).
struct SyntheticPairs {
  std::vector<double> x;
  std::vector<double> y;
};
SyntheticPairs synthetic_rank_pairs(std::uint64_t n, std::uint64_t seed);

// Throws DataError with fewer than two distinct sizes or a non-positive
// time.
PowerFit fit_power_law(std::span<const TimingPoint> points);

struct BenchOptions {
  int trials = 5;
  std::uint64_t seed = 42;
  double budget_seconds = 300.0;  // per (kernel, size) cell
  int threads = 1;
};

// Median-of-trials wall time per size. A size whose predicted or measured
// cost exceeds the budget ends the sweep with `truncated` set. Throws
// DataError unless sizes are strictly ascending and trials >= 1.
TimingCurve time_kernel(KendallKernel kernel,
                        std::span<const std::uint64_t> sizes,
                        const BenchOptions& options = {});

// coefficient * target_n^exponent. Throws DataError when the curve has no
// fit.
double extrapolate(const TimingCurve& curve, std::uint64_t target_n);

// `n<TAB>seconds` rows.
void write_timing_points(std::ostream& out, const TimingCurve& curve);
// exponent, coefficient and r_squared lines, plus one
// `extrapolate_<n>` line per prediction.
void write_fit_stanza(std::ostream& out, const TimingCurve& curve);
// `x<TAB>y` rows of the synthetic sample.
void write_synthetic_pairs(std::ostream& out, const SyntheticPairs& pairs);

}  // namespace corpusstats
