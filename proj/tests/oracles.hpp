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

// Independent reference computations used only by tests. Nothing here
// calls into the library code paths these oracles check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corpusstats/ingest.hpp"

namespace corpusstats::oracle {

struct Recount {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> terms;
  std::uint64_t doc_count = 0;
};

// For every term, scan every document and count.
inline Recount nested_loop_recount(const std::vector<Document>& docs) {
  std::set<std::string> vocabulary;
  for (const auto& d : docs) vocabulary.insert(d.tokens.begin(), d.tokens.end());
  Recount out;
  out.doc_count = docs.size();
  for (const auto& term : vocabulary) {
    std::uint64_t tc = 0, df = 0;
    for (const auto& d : docs) {
      std::uint64_t here = 0;
      for (const auto& t : d.tokens) here += (t == term);
      tc += here;
      df += here > 0;
    }
    out.terms[term] = {tc, df};
  }
  return out;
}

// rank(i) = 1 + |{j : v[j] > v[i]}|, by direct scan.
inline std::vector<std::uint64_t> quadratic_ranks(
    const std::vector<std::uint64_t>& values) {
  std::vector<std::uint64_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::uint64_t larger = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      larger += values[j] > values[i];
    }
    ranks[i] = 1 + larger;
  }
  return ranks;
}

// cov(x, y) / (sd(x) sd(y)) from the definitions, in long double.
inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  cov /= n;
  vx /= n;
  vy /= n;
  return static_cast<double>(cov / std::sqrt(vx * vy));
}

// Ascending mid-ranks by direct counting: (#smaller) + (#equal + 1) / 2.
inline std::vector<double> midranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double smaller = 0, equal = 0;
    for (const double w : v) {
      smaller += w < v[i];
      equal += w == v[i];
    }
    r[i] = smaller + (equal + 1.0) / 2.0;
  }
  return r;
}

struct PairTally {
  std::uint64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0,
                ties_xy = 0;
};

// Classifies every unordered pair via the sign of the coordinate products.
inline PairTally enumerate_pairs(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  PairTally t;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const int sx = (x[i] > x[j]) - (x[i] < x[j]);
      const int sy = (y[i] > y[j]) - (y[i] < y[j]);
      if (sx == 0 && sy == 0) ++t.ties_xy;
      else if (sx == 0) ++t.ties_x;
      else if (sy == 0) ++t.ties_y;
      else if (sx * sy > 0) ++t.concordant;
      else ++t.discordant;
    }
  }
  return t;
}

inline double tau_b(const PairTally& t) {
  const double num = static_cast<double>(t.concordant) -
                     static_cast<double>(t.discordant);
  const double a = static_cast<double>(t.concordant + t.discordant + t.ties_x);
  const double b = static_cast<double>(t.concordant + t.discordant + t.ties_y);
  return num / std::sqrt(a * b);
}

// Two-sided permutation p-value of Spearman's rho: the share of all n!
// reorderings of y whose |rho| reaches the observed |rho|.
inline double permutation_p(const std::vector<double>& x,
                            std::vector<double> y) {
  const auto rx = midranks(x);
  const double observed = std::abs(pearson(rx, midranks(y)));
  std::vector<std::size_t> perm(y.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::uint64_t hits = 0, total = 0;
  std::vector<double> shuffled(y.size());
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = y[perm[i]];
    const double r = std::abs(pearson(rx, midranks(shuffled)));
    hits += r >= observed - 1e-12;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

struct MeanVar {
  double mean = 0.0;
  double sample_sd = 0.0;
};

inline MeanVar two_pass(const std::vector<double>& v) {
  long double sum = 0;
  for (const double x : v) sum += x;
  const long double mean = sum / static_cast<long double>(v.size());
  long double ss = 0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  MeanVar out;
  out.mean = static_cast<double>(mean);
  out.sample_sd = v.size() > 1
                      ? static_cast<double>(std::sqrt(
                            ss / static_cast<long double>(v.size() - 1)))
                      : 0.0;
  return out;
}

}  // namespace corpusstats::oracle
