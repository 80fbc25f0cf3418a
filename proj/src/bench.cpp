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

#include "corpusstats/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "corpusstats/correlation.hpp"
#include "corpusstats/error.hpp"
#include "corpusstats/text_io.hpp"

namespace corpusstats {

std::string_view to_string(KendallKernel kernel) {
  return kernel == KendallKernel::naive ? "naive" : "fast";
}

SyntheticPairs synthetic_rank_pairs(std::uint64_t n, std::uint64_t seed) {
  // mt19937_64 output is fixed by the standard; distributions are not, so
  // values are mapped with plain modular arithmetic.
  std::mt19937_64 engine(seed);
  SyntheticPairs out;
  out.x.resize(n);
  out.y.resize(n);
  const std::uint64_t spread = n / 10 + 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t base = engine() % n;
    out.x[i] = static_cast<double>(base + 1);
    out.y[i] = static_cast<double>(base + engine() % spread + 1);
  }
  return out;
}

PowerFit fit_power_law(std::span<const TimingPoint> points) {
  if (points.size() < 2) {
    throw DataError("power-law fit needs at least 2 points");
  }
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    if (p.n == 0 || !(p.seconds > 0.0)) {
      throw DataError("power-law fit needs positive sizes and times");
    }
    lx.push_back(std::log(static_cast<double>(p.n)));
    ly.push_back(std::log(p.seconds));
  }
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    throw DataError("power-law fit needs at least 2 distinct sizes");
  }
  PowerFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.coefficient = std::exp(intercept);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    fit.residuals.push_back(r);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

namespace {

double run_once(KendallKernel kernel, const SyntheticPairs& data) {
  const auto start = std::chrono::steady_clock::now();
  const auto counts = kernel == KendallKernel::naive
                          ? kendall_counts_naive(data.x, data.y)
                          : kendall_counts_fast(data.x, data.y);
  const auto stop = std::chrono::steady_clock::now();
  // Keeps the call from being optimized away.
  if (counts.total() == static_cast<std::uint64_t>(-1)) std::abort();
  return std::chrono::duration<double>(stop - start).count();
}

class ScopedThreads {
 public:
  explicit ScopedThreads(int threads) : saved_(omp_get_max_threads()) {
    omp_set_num_threads(std::max(1, threads));
  }
  ~ScopedThreads() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

}  // namespace

TimingCurve time_kernel(KendallKernel kernel,
                        std::span<const std::uint64_t> sizes,
                        const BenchOptions& options) {
  if (options.trials < 1) throw DataError("trials must be >= 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 2 || (i > 0 && sizes[i] <= sizes[i - 1])) {
      throw DataError("sizes must be strictly ascending and >= 2");
    }
  }
  ScopedThreads scope(options.threads);
  TimingCurve curve;
  curve.kernel = kernel;
  curve.threads = std::max(1, options.threads);

  for (const auto n : sizes) {
    if (curve.points.size() >= 2) {
      const auto fit = fit_power_law(curve.points);
      const double predicted =
          fit.coefficient * std::pow(static_cast<double>(n), fit.exponent) *
          options.trials;
      if (predicted > options.budget_seconds) {
        curve.truncated = true;
        break;
      }
    }
    const auto data = synthetic_rank_pairs(n, options.seed);
    std::vector<double> samples;
    double spent = 0.0;
    for (int t = 0; t < options.trials; ++t) {
      samples.push_back(run_once(kernel, data));
      spent += samples.back();
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    const double median = samples.size() % 2 == 1
                              ? samples[mid]
                              : (samples[mid - 1] + samples[mid]) / 2.0;
    // Timer resolution floor keeps log-log fitting well defined.
    curve.points.push_back({n, std::max(median, 1e-9)});
    if (spent > options.budget_seconds) {
      curve.truncated = true;
      break;
    }
  }
  if (curve.points.size() >= 2) curve.fit = fit_power_law(curve.points);
  return curve;
}

double extrapolate(const TimingCurve& curve, std::uint64_t target_n) {
  if (!curve.fit) {
    throw DataError("timing curve has no fit to extrapolate from");
  }
  return curve.fit->coefficient *
         std::pow(static_cast<double>(target_n), curve.fit->exponent);
}

void write_timing_points(std::ostream& out, const TimingCurve& curve) {
  for (const auto& p : curve.points) {
    out << p.n << '\t' << format_double(p.seconds) << '\n';
  }
}

void write_fit_stanza(std::ostream& out, const TimingCurve& curve) {
  out << "kernel\t" << to_string(curve.kernel) << '\n';
  out << "threads\t" << curve.threads << '\n';
  out << "truncated\t" << (curve.truncated ? "true" : "false") << '\n';
  if (!curve.fit) {
    out << "fit\tunavailable\n";
    return;
  }
  out << "exponent\t" << format_double(curve.fit->exponent) << '\n';
  out << "coefficient\t" << format_double(curve.fit->coefficient) << '\n';
  out << "r_squared\t" << format_double(curve.fit->r_squared) << '\n';
  for (const auto& [n, seconds] : curve.extrapolations) {
    out << "extrapolate_" << n << '\t' << format_double(seconds) << '\n';
  }
}

void write_synthetic_pairs(std::ostream& out, const SyntheticPairs& pairs) {
  for (std::size_t i = 0; i < pairs.x.size(); ++i) {
    out << format_double(pairs.x[i]) << '\t' << format_double(pairs.y[i])
        << '\n';
  }
}

}  // namespace corpusstats
