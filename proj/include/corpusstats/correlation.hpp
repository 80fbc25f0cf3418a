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
#include <vector>

namespace corpusstats {

// Smallest p-value ever reported; matches the floor printed by common
// statistics packages.
inline constexpr double kPValueFloor = 2.2e-16;

// Classification of the n(n-1)/2 unordered pairs of a paired sample.
struct KendallCounts {
  std::uint64_t concordant = 0;
  std::uint64_t discordant = 0;
  std::uint64_t ties_x = 0;   // tied in x only
  std::uint64_t ties_y = 0;   // tied in y only
  std::uint64_t ties_xy = 0;  // tied in both

  std::uint64_t total() const {
    return concordant + discordant + ties_x + ties_y + ties_xy;
  }
  bool operator==(const KendallCounts&) const = default;
};

struct KendallResult {
  std::uint64_t n = 0;
  KendallCounts counts;
  double tau_a = 0.0;
  double tau_b = 0.0;
};

// Exhaustive pair classification, O(n^2). Kept as the reference the fast
// kernel is tested against.
KendallCounts kendall_counts_naive(std::span<const double> x,
                                   std::span<const double> y);

// Sort by (x, y), then count discordant pairs as the exchanges of a stable
// merge sort on y; tie groups are tallied from the sorted runs.
// O(n log n) time, O(n) extra space. Merge passes run under OpenMP.
KendallCounts kendall_counts_fast(std::span<const double> x,
                                  std::span<const double> y);

// Tau-a and tau-b from pair counts. Throws DegenerateInputError when n < 2
// or when the tau-b denominator is zero.
KendallResult kendall_from_counts(std::uint64_t n, const KendallCounts& c);

KendallResult kendall_tau_naive(std::span<const double> x,
                                std::span<const double> y);
KendallResult kendall_tau_fast(std::span<const double> x,
                               std::span<const double> y);

// Pearson product-moment correlation of the two vectors. Applied to rank
// vectors this is Spearman's rho, exact under ties. Throws
// DegenerateInputError when n < 2 or either vector is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// 1 - 6 sum(d^2) / (n (n^2 - 1)). Biased when ties are present; reported
// only as a diagnostic.
double spearman_shortcut(std::span<const double> x, std::span<const double> y);

// Ascending standard competition ranks: 1 + number of strictly smaller
// values.
std::vector<double> rerank_competition(std::span<const double> values);
// Ascending mid-ranks: tied values share the mean of the positions they
// occupy.
std::vector<double> rerank_fractional(std::span<const double> values);

// Bivariate-normal conversion: r = sin(pi tau / 2), then
// rho = (6 / pi) asin(r / 2). Throws DataError when |tau| > 1.
double tau_to_rho(double tau);

// Two-sided p-value for Spearman's rho under independence. Uses the exact
// tie-free permutation distribution when n <= 10 and the t approximation
// otherwise. Results are floored at kPValueFloor.
double rho_significance(double rho, std::uint64_t n);
// t = rho sqrt((n - 2) / (1 - rho^2)) against Student's t with n - 2
// degrees of freedom. Requires n >= 3.
double rho_significance_approx(double rho, std::uint64_t n);
// Fraction of the n! tie-free rankings whose |rho| reaches |rho|.
// Requires 2 <= n <= 10.
double rho_significance_exact(double rho, std::uint64_t n);

enum class RankScheme {
  sports,      // use the supplied (minimum) ranks as they are
  fractional,  // re-rank each vector with mid-ranks first
};

struct CorrelationOptions {
  RankScheme scheme = RankScheme::sports;
  bool shortcut_diagnostic = false;
};

struct CorrelationReport {
  std::uint64_t n = 0;
  double spearman_rho = 0.0;
  double kendall_tau_b = 0.0;
  double kendall_tau_a = 0.0;
  double rho_estimated_from_tau = 0.0;
  double p_value_rho = 1.0;
  KendallCounts counts;
  RankScheme scheme = RankScheme::sports;
  std::optional<double> spearman_shortcut;
};

// Full report over a paired sample. Kendall uses the fast kernel; the
// conversion estimate is computed from tau-b.
CorrelationReport correlate(std::span<const double> x,
                            std::span<const double> y,
                            const CorrelationOptions& options = {});

struct CurvePoint {
  std::size_t checkpoint = 0;
  double rho = 0.0;
  double tau_b = 0.0;
};

struct PrefixCurve {
  std::vector<CurvePoint> points;
  std::vector<std::string> warnings;  // one per skipped checkpoint
};

// Correlations over the first k pairs for every checkpoint k. Each prefix
// is re-ranked on its own (competition ranks, or mid-ranks under
// RankScheme::fractional) before rho is computed. Checkpoints below 2 or
// with a constant prefix are skipped with a warning. Throws DataError when
// checkpoints are not ascending or exceed the sample size. Checkpoints are
// evaluated in parallel.
PrefixCurve prefix_correlation_curve(std::span<const double> x,
                                     std::span<const double> y,
                                     std::span<const std::size_t> checkpoints,
                                     RankScheme scheme = RankScheme::sports);

void write_curve(std::ostream& out, const PrefixCurve& curve);

}  // namespace corpusstats
