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

#include "corpusstats/correlation.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <utility>

#include "corpusstats/error.hpp"
#include "corpusstats/text_io.hpp"

namespace corpusstats {
namespace {

void check_sample(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DataError("paired sample has mismatched lengths " +
                    std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) {
      throw DataError("paired sample contains NaN at index " +
                      std::to_string(i));
    }
  }
}

std::uint64_t pairs_of(std::uint64_t t) { return t * (t - 1) / 2; }

// Stable merge of src[lo, mid) and src[mid, hi) into dst; returns the
// number of (left, right) pairs with right strictly smaller.
std::uint64_t merge_count(const double* src, double* dst, std::size_t lo,
                          std::size_t mid, std::size_t hi) {
  std::uint64_t swaps = 0;
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (src[j] < src[i]) {
      swaps += mid - i;
      dst[k++] = src[j++];
    } else {
      dst[k++] = src[i++];
    }
  }
  while (i < mid) dst[k++] = src[i++];
  while (j < hi) dst[k++] = src[j++];
  return swaps;
}

constexpr std::size_t kRunLength = 32;

// Insertion sort counting each strict exchange.
std::uint64_t insertion_count(double* v, std::size_t lo, std::size_t hi) {
  std::uint64_t swaps = 0;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const double key = v[i];
    std::size_t j = i;
    while (j > lo && key < v[j - 1]) {
      v[j] = v[j - 1];
      --j;
    }
    swaps += i - j;
    v[j] = key;
  }
  return swaps;
}

// Sorts `values` ascending and returns its inversion count.
std::uint64_t sort_count_inversions(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::uint64_t swaps = 0;
  const auto runs = static_cast<std::int64_t>((n + kRunLength - 1) / kRunLength);
#pragma omp parallel for reduction(+ : swaps) schedule(static)
  for (std::int64_t r = 0; r < runs; ++r) {
    const std::size_t lo = static_cast<std::size_t>(r) * kRunLength;
    swaps += insertion_count(values.data(), lo, std::min(n, lo + kRunLength));
  }

  std::vector<double> buffer(n);
  double* src = values.data();
  double* dst = buffer.data();
  for (std::size_t width = kRunLength; width < n; width *= 2) {
    const auto blocks = static_cast<std::int64_t>((n + 2 * width - 1) / (2 * width));
#pragma omp parallel for reduction(+ : swaps) schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * 2 * width;
      const std::size_t mid = std::min(n, lo + width);
      const std::size_t hi = std::min(n, lo + 2 * width);
      swaps += merge_count(src, dst, lo, mid, hi);
    }
    std::swap(src, dst);
  }
  if (src != values.data()) std::copy(src, src + n, values.data());
  return swaps;
}

// Pearson correlation with partial sums formed over fixed blocks so the
// result does not depend on the thread count.
double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;

  std::vector<double> sum_x(blocks), sum_y(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      sx += x[i];
      sy += y[i];
    }
    sum_x[b] = sx;
    sum_y[b] = sy;
  }
  const double dn = static_cast<double>(n);
  const double mean_x = std::accumulate(sum_x.begin(), sum_x.end(), 0.0) / dn;
  const double mean_y = std::accumulate(sum_y.begin(), sum_y.end(), 0.0) / dn;

  std::vector<double> sxy(blocks), sxx(blocks), syy(blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double cxy = 0.0, cxx = 0.0, cyy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double dx = x[i] - mean_x;
      const double dy = y[i] - mean_y;
      cxy += dx * dy;
      cxx += dx * dx;
      cyy += dy * dy;
    }
    sxy[b] = cxy;
    sxx[b] = cxx;
    syy[b] = cyy;
  }
  const double cov = std::accumulate(sxy.begin(), sxy.end(), 0.0);
  const double var_x = std::accumulate(sxx.begin(), sxx.end(), 0.0);
  const double var_y = std::accumulate(syy.begin(), syy.end(), 0.0);
  if (var_x == 0.0 || var_y == 0.0) {
    throw DegenerateInputError(
        "rank correlation undefined: one vector is constant");
  }
  return std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
}

}  // namespace

KendallCounts kendall_counts_naive(std::span<const double> x,
                                   std::span<const double> y) {
  check_sample(x, y);
  KendallCounts c;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool tie_x = x[i] == x[j];
      const bool tie_y = y[i] == y[j];
      if (tie_x && tie_y) {
        ++c.ties_xy;
      } else if (tie_x) {
        ++c.ties_x;
      } else if (tie_y) {
        ++c.ties_y;
      } else if ((x[i] < x[j]) == (y[i] < y[j])) {
        ++c.concordant;
      } else {
        ++c.discordant;
      }
    }
  }
  return c;
}

KendallCounts kendall_counts_fast(std::span<const double> x,
                                  std::span<const double> y) {
  check_sample(x, y);
  const std::size_t n = x.size();
  if (n < 2) return {};

  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {x[i], y[i]};
  std::sort(pairs.begin(), pairs.end());

  std::uint64_t x_tie_pairs = 0, joint_tie_pairs = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && pairs[j].first == pairs[i].first) ++j;
    x_tie_pairs += pairs_of(j - i);
    for (std::size_t k = i; k < j;) {
      std::size_t m = k + 1;
      while (m < j && pairs[m].second == pairs[k].second) ++m;
      joint_tie_pairs += pairs_of(m - k);
      k = m;
    }
    i = j;
  }

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = pairs[i].second;
  pairs.clear();
  pairs.shrink_to_fit();
  const std::uint64_t discordant = sort_count_inversions(ys);

  std::uint64_t y_tie_pairs = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && ys[j] == ys[i]) ++j;
    y_tie_pairs += pairs_of(j - i);
    i = j;
  }

  const std::uint64_t total = pairs_of(n);
  KendallCounts c;
  c.ties_xy = joint_tie_pairs;
  c.ties_x = x_tie_pairs - joint_tie_pairs;
  c.ties_y = y_tie_pairs - joint_tie_pairs;
  c.discordant = discordant;
  c.concordant = total - x_tie_pairs - y_tie_pairs + joint_tie_pairs -
                 discordant;
  return c;
}

KendallResult kendall_from_counts(std::uint64_t n, const KendallCounts& c) {
  if (n < 2) {
    throw DegenerateInputError("Kendall tau needs at least 2 pairs, got " +
                               std::to_string(n));
  }
  const auto diff = static_cast<double>(static_cast<std::int64_t>(c.concordant) -
                                        static_cast<std::int64_t>(c.discordant));
  const std::uint64_t untied_x = c.concordant + c.discordant + c.ties_y;
  const std::uint64_t untied_y = c.concordant + c.discordant + c.ties_x;
  if (untied_x == 0 || untied_y == 0) {
    throw DegenerateInputError(
        "Kendall tau-b undefined: one vector is constant");
  }
  KendallResult r;
  r.n = n;
  r.counts = c;
  r.tau_a = diff / static_cast<double>(pairs_of(n));
  r.tau_b = diff / (std::sqrt(static_cast<double>(untied_x)) *
                    std::sqrt(static_cast<double>(untied_y)));
  r.tau_a = std::clamp(r.tau_a, -1.0, 1.0);
  r.tau_b = std::clamp(r.tau_b, -1.0, 1.0);
  return r;
}

KendallResult kendall_tau_naive(std::span<const double> x,
                                std::span<const double> y) {
  return kendall_from_counts(x.size(), kendall_counts_naive(x, y));
}

KendallResult kendall_tau_fast(std::span<const double> x,
                               std::span<const double> y) {
  return kendall_from_counts(x.size(), kendall_counts_fast(x, y));
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  check_sample(x, y);
  if (x.size() < 2) {
    throw DegenerateInputError("Spearman rho needs at least 2 pairs, got " +
                               std::to_string(x.size()));
  }
  return pearson(x, y);
}

double spearman_shortcut(std::span<const double> x,
                         std::span<const double> y) {
  check_sample(x, y);
  if (x.size() < 2) {
    throw DegenerateInputError("Spearman rho needs at least 2 pairs");
  }
  long double sum_d2 = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double d = static_cast<long double>(x[i]) - y[i];
    sum_d2 += d * d;
  }
  const long double n = static_cast<long double>(x.size());
  return static_cast<double>(1.0L - 6.0L * sum_d2 / (n * (n * n - 1.0L)));
}

std::vector<double> rerank_competition(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const bool tied = pos > 0 && values[order[pos]] == values[order[pos - 1]];
    ranks[order[pos]] =
        tied ? ranks[order[pos - 1]] : static_cast<double>(pos + 1);
  }
  return ranks;
}

std::vector<double> rerank_fractional(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i+1 .. j averaged
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

double tau_to_rho(double tau) {
  if (!(std::abs(tau) <= 1.0)) {
    throw DataError("tau must lie in [-1, 1], got " + format_double(tau));
  }
  if (tau == 1.0 || tau == -1.0 || tau == 0.0) return tau;
  const double r = std::sin(std::numbers::pi * tau / 2.0);
  return 6.0 / std::numbers::pi * std::asin(r / 2.0);
}

double rho_significance_approx(double rho, std::uint64_t n) {
  if (n < 3) {
    throw DataError("t approximation needs n >= 3, got " + std::to_string(n));
  }
  if (std::abs(rho) >= 1.0) return kPValueFloor;
  if (rho == 0.0) return 1.0;
  const double dof = static_cast<double>(n - 2);
  const double t = std::abs(rho) * std::sqrt(dof / (1.0 - rho * rho));
  const boost::math::students_t dist(dof);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  return std::clamp(p, kPValueFloor, 1.0);
}

namespace {

// Histogram of sum(d^2) over all n! permutations, indexed by the sum.
const std::vector<std::uint64_t>& permutation_null(std::size_t n) {
  static std::mutex mutex;
  static std::array<std::vector<std::uint64_t>, 11> cache;
  std::lock_guard lock(mutex);
  auto& hist = cache[n];
  if (hist.empty()) {
    const std::size_t max_sum = n * (n * n - 1) / 3;
    hist.assign(max_sum + 1, 0);
    std::array<int, 10> perm{};
    std::iota(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n), 0);
    do {
      std::size_t s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int d = perm[i] - static_cast<int>(i);
        s += static_cast<std::size_t>(d * d);
      }
      ++hist[s];
    } while (std::next_permutation(
        perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n)));
  }
  return hist;
}

}  // namespace

double rho_significance_exact(double rho, std::uint64_t n) {
  if (n < 2 || n > 10) {
    throw DataError("exact permutation test supports 2 <= n <= 10, got " +
                    std::to_string(n));
  }
  const auto& hist = permutation_null(n);
  const double scale = static_cast<double>(n * (n * n - 1));
  const double target = std::abs(rho) - 1e-12;
  std::uint64_t hits = 0, total = 0;
  for (std::size_t s = 0; s < hist.size(); ++s) {
    total += hist[s];
    const double perm_rho = 1.0 - 6.0 * static_cast<double>(s) / scale;
    if (std::abs(perm_rho) >= target) hits += hist[s];
  }
  return std::max(kPValueFloor,
                  static_cast<double>(hits) / static_cast<double>(total));
}

double rho_significance(double rho, std::uint64_t n) {
  if (std::isnan(rho) || std::abs(rho) > 1.0) {
    throw DataError("rho must lie in [-1, 1], got " + format_double(rho));
  }
  if (n < 2) {
    throw DataError("significance needs n >= 2, got " + std::to_string(n));
  }
  if (n <= 10) return rho_significance_exact(rho, n);
  return rho_significance_approx(rho, n);
}

CorrelationReport correlate(std::span<const double> x,
                            std::span<const double> y,
                            const CorrelationOptions& options) {
  check_sample(x, y);
  CorrelationReport report;
  report.n = x.size();
  report.scheme = options.scheme;

  std::vector<double> fx, fy;
  std::span<const double> rx = x, ry = y;
  if (options.scheme == RankScheme::fractional) {
    fx = rerank_fractional(x);
    fy = rerank_fractional(y);
    rx = fx;
    ry = fy;
  }
  report.spearman_rho = spearman_rho(rx, ry);
  if (options.shortcut_diagnostic) {
    report.spearman_shortcut = spearman_shortcut(rx, ry);
  }
  const auto kendall = kendall_tau_fast(x, y);
  report.counts = kendall.counts;
  report.kendall_tau_a = kendall.tau_a;
  report.kendall_tau_b = kendall.tau_b;
  report.rho_estimated_from_tau = tau_to_rho(kendall.tau_b);
  report.p_value_rho = rho_significance(report.spearman_rho, report.n);
  return report;
}

PrefixCurve prefix_correlation_curve(std::span<const double> x,
                                     std::span<const double> y,
                                     std::span<const std::size_t> checkpoints,
                                     RankScheme scheme) {
  check_sample(x, y);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] > x.size()) {
      throw DataError("checkpoint " + std::to_string(checkpoints[i]) +
                      " exceeds sample size " + std::to_string(x.size()));
    }
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
      throw DataError("checkpoints must be strictly ascending");
    }
  }

  const std::size_t count = checkpoints.size();
  std::vector<std::optional<CurvePoint>> points(count);
  std::vector<std::string> notes(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
    const std::size_t k = checkpoints[i];
    if (k < 2) {
      notes[i] = "checkpoint " + std::to_string(k) + " skipped: fewer than 2 pairs";
      continue;
    }
    try {
      const auto px = x.first(k);
      const auto py = y.first(k);
      const auto rx = scheme == RankScheme::fractional ? rerank_fractional(px)
                                                       : rerank_competition(px);
      const auto ry = scheme == RankScheme::fractional ? rerank_fractional(py)
                                                       : rerank_competition(py);
      CurvePoint p;
      p.checkpoint = k;
      p.rho = spearman_rho(rx, ry);
      p.tau_b = kendall_tau_fast(px, py).tau_b;
      points[i] = p;
    } catch (const DegenerateInputError& e) {
      notes[i] = "checkpoint " + std::to_string(k) + " skipped: " + e.what();
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  PrefixCurve curve;
  for (std::size_t i = 0; i < count; ++i) {
    if (points[i]) curve.points.push_back(*points[i]);
    if (!notes[i].empty()) curve.warnings.push_back(std::move(notes[i]));
  }
  return curve;
}

void write_curve(std::ostream& out, const PrefixCurve& curve) {
  for (const auto& p : curve.points) {
    out << p.checkpoint << '\t' << format_double(p.rho) << '\t'
        << format_double(p.tau_b) << '\n';
  }
}

}  // namespace corpusstats
