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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exits non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpusstats/bench.hpp"
#include "corpusstats/cli.hpp"
#include "corpusstats/correlation.hpp"
#include "corpusstats/lexsig.hpp"
#include "corpusstats/ranking.hpp"
#include "corpusstats/ratio.hpp"
#include "corpusstats/stats.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace corpusstats;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Accumulates failures for one criterion; the first few are kept as detail.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  void note(const std::string& text) { info_.push_back(text); }
  bool ok() const { return failures_ == 0; }
  std::string detail() const {
    std::string out;
    for (const auto& s : info_) out += (out.empty() ? "" : "; ") + s;
    for (const auto& s : notes_) out += (out.empty() ? "" : "; ") + s;
    if (failures_ > notes_.size()) {
      out += "; " + std::to_string(failures_ - notes_.size()) + " more";
    }
    return out;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> info_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "corpusstats");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

// --- 1 ---------------------------------------------------------------------
Verdict worked_table_count() {
  Verdict v;
  testing::TempDir dir;
  const auto corpus = dir.path() / "corpus";
  std::filesystem::create_directories(corpus);
  testing::write_beatles_corpus(corpus);
  const auto start = Clock::now();
  const int code = run_cli({"count", "--corpus", corpus.string(), "-o",
                            dir.file("stats.tsv")});
  const double elapsed = seconds_since(start);
  v.expect(code == 0, "count exit " + std::to_string(code));
  if (code != 0) return v;
  const auto table = read_stats(dir.file("stats.tsv"));
  const std::map<std::string, TermCounts> expected = {
      {"all", {2, 2}},  {"buy", {1, 1}},    {"can't", {1, 1}}, {"is", {1, 1}},
      {"love", {2, 2}}, {"me", {2, 2}},     {"need", {1, 1}},  {"please", {2, 1}},
      {"you", {1, 1}},  {"my", {1, 1}},     {"loving", {1, 1}}, {"long", {3, 1}}};
  v.expect(table.doc_count() == 5, "N != 5");
  v.expect(table.size() == 12, "term count " + std::to_string(table.size()));
  for (const auto& [term, counts] : expected) {
    const auto* got = table.find(term);
    v.expect(got != nullptr && *got == counts, "mismatch for " + term);
  }
  v.expect(elapsed < 1.0, "took " + fmt(elapsed) + " s");
  v.note("12 terms, N=5, " + fmt(elapsed) + " s");
  return v;
}

// --- 2 ---------------------------------------------------------------------
Verdict sports_ranking() {
  Verdict v;
  const auto start = Clock::now();
  const std::vector<std::uint64_t> values = {10, 7, 7, 3};
  v.expect(competition_ranks(values) == std::vector<std::uint64_t>{1, 2, 2, 4},
           "(10,7,7,3) not ranked (1,2,2,4)");
  std::mt19937_64 rng(2);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 500;
    const std::uint64_t levels = 1 + rng() % n;
    std::vector<TermValue> pairs;
    std::vector<std::uint64_t> raw;
    for (std::size_t i = 0; i < n; ++i) {
      raw.push_back(rng() % levels);
      pairs.push_back({"t" + std::to_string(i), raw.back()});
    }
    const auto expected = oracle::quadratic_ranks(raw);
    std::map<std::string, std::uint64_t> got;
    for (const auto& item : sports_rank(pairs).items) got[item.term] = item.rank;
    for (std::size_t i = 0; i < n; ++i) {
      mismatches += got[pairs[i].term] != expected[i];
    }
  }
  const double elapsed = seconds_since(start);
  v.expect(mismatches == 0, std::to_string(mismatches) + " rank mismatches");
  v.expect(elapsed < 10.0, "took " + fmt(elapsed) + " s");
  v.note("1000 lists, 0 mismatches allowed, " + fmt(elapsed) + " s");
  return v;
}

// --- 3 ---------------------------------------------------------------------
Verdict top20_overlap() {
  Verdict v;
  const std::vector<std::string> tc = {
      "the", "of", "and", "to", "a", "in", "is", "for", "that", "on",
      "with", "it", "be", "as", "are", "you", "this", "by", "at", "i"};
  const std::vector<std::string> df = {
      "the", "and", "to", "of", "a", "in", "for", "is", "on", "with",
      "are", "this", "from", "be", "by", "as", "that", "at", "it", "an"};
  auto as_list = [](const std::vector<std::string>& terms) {
    std::vector<TermValue> pairs;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      pairs.push_back({terms[i], 100 - i});
    }
    return sports_rank(pairs);
  };
  const auto overlap = ranking_overlap(as_list(tc), as_list(df), 1, 20);
  v.expect(overlap.union_size == 22,
           "union " + std::to_string(overlap.union_size));
  v.expect(overlap.intersection_size == 18,
           "intersection " + std::to_string(overlap.intersection_size));
  v.note("union " + std::to_string(overlap.union_size) + ", intersection " +
         std::to_string(overlap.intersection_size));
  return v;
}

// --- 4 ---------------------------------------------------------------------
Verdict kendall_equivalence() {
  Verdict v;
  const auto start = Clock::now();
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + rng() % 1999;
    // Tie density in [0, 0.9]: the share of values drawn from a small pool.
    const double density = 0.9 * (trial % 10) / 9.0;
    auto draw = [&] {
      std::vector<double> out(n);
      const std::uint64_t pool = std::max<std::uint64_t>(1, n / 20);
      for (auto& x : out) {
        const bool tied = std::uniform_real_distribution<>(0, 1)(rng) < density;
        x = tied ? static_cast<double>(rng() % pool)
                 : static_cast<double>(pool + rng() % 1'000'000'000);
      }
      return out;
    };
    const auto x = draw();
    const auto y = draw();
    KendallResult naive, fast;
    try {
      naive = kendall_tau_naive(x, y);
      fast = kendall_tau_fast(x, y);
    } catch (const std::exception&) {
      v.expect(kendall_counts_naive(x, y) == kendall_counts_fast(x, y),
               "degenerate trial counts differ");
      continue;
    }
    v.expect(naive.counts == fast.counts,
             "counts differ at trial " + std::to_string(trial));
    const double d = std::max(std::abs(naive.tau_a - fast.tau_a),
                              std::abs(naive.tau_b - fast.tau_b));
    worst = std::max(worst, d);
    v.expect(d <= 1e-12, "tau differs by " + fmt(d));
  }
  const double elapsed = seconds_since(start);
  v.expect(elapsed < 300.0, "took " + fmt(elapsed) + " s");
  v.note("10000 trials, max |dtau| " + fmt(worst) + ", " + fmt(elapsed) + " s");
  return v;
}

// --- 5 ---------------------------------------------------------------------
Verdict spearman_correctness() {
  Verdict v;
  std::vector<double> up(200);
  std::iota(up.begin(), up.end(), 1.0);
  std::vector<double> down(up.rbegin(), up.rend());
  const double same = spearman_rho(up, up);
  const double rev = spearman_rho(up, down);
  v.expect(std::abs(same - 1.0) <= 1e-12, "identical gave " + fmt(same));
  v.expect(std::abs(rev + 1.0) <= 1e-12, "reversal gave " + fmt(rev));
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 + rng() % 500;
    const auto x = testing::random_values(rng, n, 1 + rng() % n);
    const auto y = testing::random_values(rng, n, 1 + rng() % n);
    const auto rx = rerank_competition(x), ry = rerank_competition(y);
    if (std::all_of(rx.begin(), rx.end(), [&](double r) { return r == rx[0]; }) ||
        std::all_of(ry.begin(), ry.end(), [&](double r) { return r == ry[0]; })) {
      continue;
    }
    const double d = std::abs(spearman_rho(rx, ry) - oracle::pearson(rx, ry));
    worst = std::max(worst, d);
    v.expect(d <= 1e-12, "rho differs by " + fmt(d));
  }
  v.note("max |drho| " + fmt(worst));
  return v;
}

// --- 6 ---------------------------------------------------------------------
Verdict tau_to_rho_anchor() {
  Verdict v;
  const double anchor = tau_to_rho(0.8);
  v.expect(std::abs(anchor - 0.94) <= 0.005,
           "outside 0.94 +/- 0.005");
  v.expect(tau_to_rho(0.0) == 0.0, "0 is not fixed");
  v.expect(tau_to_rho(1.0) == 1.0, "1 is not fixed");
  double previous = tau_to_rho(-1.0);
  for (int i = 1; i <= 99; ++i) {
    const double rho = tau_to_rho(-1.0 + 2.0 * i / 100.0);
    v.expect(rho > previous, "not monotone at grid point " + std::to_string(i));
    previous = rho;
  }
  v.note("tau_to_rho(0.8) = " + fmt(anchor));
  return v;
}

// --- 7 ---------------------------------------------------------------------
Verdict ratio_properties() {
  Verdict v;
  const auto table = compute_tc_df(testing::beatles_documents());
  const auto h = ratio_histogram(table, Rounding::integer);
  v.expect(h.summary.mean == 1.25, "mean " + fmt(h.summary.mean));
  v.expect(h.summary.median == 1.0, "median " + fmt(h.summary.median));
  v.expect(h.bins == std::map<std::uint64_t, std::uint64_t>{{1, 10}, {2, 1}, {3, 1}},
           "integer bins differ");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    TermStatsTable t;
    t.set_doc_count(1000);
    const std::size_t terms = 1 + rng() % 2000;
    for (std::size_t i = 0; i < terms; ++i) {
      const std::uint64_t df = 1 + rng() % 1000;
      t.insert("t" + std::to_string(i), {df + rng() % (df * 3), df});
    }
    std::optional<RatioSummary> first;
    for (Rounding r : {Rounding::two_decimals, Rounding::one_decimal,
                       Rounding::integer}) {
      const auto hist = ratio_histogram(t, r);
      v.expect(hist.value(hist.bins.begin()->first) >= 1.0, "bin key below 1");
      if (!first) first = hist.summary;
      v.expect(hist.summary == *first, "summary differs across roundings");
    }
  }
  v.note("mean 1.25, median 1, bins {1:10, 2:1, 3:1}");
  return v;
}

// --- 8 ---------------------------------------------------------------------
Verdict complexity() {
  Verdict v;
  BenchOptions options;
  options.trials = 3;
  options.budget_seconds = 600.0;
  options.threads = 1;
  const std::vector<std::uint64_t> naive_sizes = {1000, 2000, 4000, 8000};
  const std::vector<std::uint64_t> fast_sizes = {100000, 200000, 400000, 800000};
  const auto naive = time_kernel(KendallKernel::naive, naive_sizes, options);
  const auto fast = time_kernel(KendallKernel::fast, fast_sizes, options);
  v.expect(naive.fit.has_value() && fast.fit.has_value(), "fit unavailable");
  if (!naive.fit || !fast.fit) return v;
  const double e_naive = naive.fit->exponent, e_fast = fast.fit->exponent;
  v.expect(e_naive >= 1.8 && e_naive <= 2.2,
           "naive exponent " + fmt(e_naive) + " outside [1.8, 2.2]");
  v.expect(e_fast >= 0.9 && e_fast <= 1.3,
           "fast exponent " + fmt(e_fast) + " outside [0.9, 1.3]");

  options.trials = 1;
  const std::vector<std::uint64_t> million = {1'000'000};
  const auto at_million = time_kernel(KendallKernel::fast, million, options);
  const double t_million = at_million.points.at(0).seconds;
  v.expect(t_million < 60.0, "n=1e6 took " + fmt(t_million) + " s");

  const std::vector<std::uint64_t> full = {11'300'000};
  const auto at_full = time_kernel(KendallKernel::fast, full, options);
  const double t_full = at_full.points.at(0).seconds;
  const double predicted = extrapolate(naive, 11'300'000);
  const double ratio = predicted / t_full;
  v.expect(ratio >= 1e3, "naive/fast at 11.3M only " + fmt(ratio));
  v.note("naive e=" + fmt(e_naive) + ", fast e=" + fmt(e_fast) +
         ", fast 1e6 " + fmt(t_million) + " s, naive@11.3M " + fmt(predicted) +
         " s vs fast " + fmt(t_full) + " s (x" + fmt(ratio) + ")");
  return v;
}

// --- 9 ---------------------------------------------------------------------
Verdict signature_properties() {
  Verdict v;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t n_docs = 1 + rng() % 1000;
    TermStatsTable t;
    t.set_doc_count(n_docs);
    const std::size_t vocab = 5 + rng() % 60;
    for (std::size_t i = 0; i < vocab; ++i) {
      const std::uint64_t df = 1 + rng() % n_docs;
      t.insert("w" + std::to_string(i), {df + rng() % (2 * n_docs), df});
    }
    const auto measured = BackgroundModel::from_table(t, DfMode::measured_df);
    const auto proxy = BackgroundModel::from_table(t, DfMode::tc_as_df);

    std::vector<std::pair<std::uint64_t, double>> by_df;
    for (const auto& [term, c] : t.entries()) {
      const double a = idf(term, measured);
      v.expect(idf(term, proxy) <= a, "proxy idf above measured for " + term);
      by_df.emplace_back(c.df, a);
    }
    std::sort(by_df.begin(), by_df.end());
    for (std::size_t i = 1; i < by_df.size(); ++i) {
      v.expect(by_df[i].second <= by_df[i - 1].second, "idf increases with df");
    }

    Document doc{"r" + std::to_string(trial), {}};
    const std::size_t len = 1 + rng() % 80;
    for (std::size_t i = 0; i < len; ++i) {
      doc.tokens.push_back("w" + std::to_string(rng() % (vocab + 10)));
    }
    const std::size_t k = 1 + rng() % 15;
    const auto sig = lexical_signature(doc, measured, k);

    std::map<std::string, double> tf_counts;
    for (const auto& term : doc.tokens) tf_counts[term] += 1.0;
    for (const double scale : {1.0, 0.25, 7.5}) {
      std::vector<std::pair<double, std::string>> sorted;
      for (const auto& [term, n] : tf_counts) {
        sorted.emplace_back(scale * n * idf(term, measured), term);
      }
      std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      sorted.resize(std::min(k, sorted.size()));
      bool same = sorted.size() == sig.terms.size();
      for (std::size_t i = 0; same && i < sorted.size(); ++i) {
        same = sorted[i].second == sig.terms[i].term;
      }
      v.expect(same, "signature differs from sorted oracle at scale " +
                         fmt(scale));
    }
  }
  v.note("1000 tables and documents");
  return v;
}

// --- 10 --------------------------------------------------------------------
Verdict determinism() {
  Verdict v;
  testing::TempDir dir;
  const auto corpus = dir.path() / "corpus";
  std::filesystem::create_directories(corpus);
  testing::write_beatles_corpus(corpus);
  const auto stream = dir.file("stream.txt");
  std::string stream_text;
  for (const auto& doc : testing::random_documents(300, 10)) {
    stream_text += "%%DOC%% " + doc.id + "\n";
    for (const auto& token : doc.tokens) stream_text += token + " ";
    stream_text += "\n";
  }
  testing::write_file(stream, stream_text);
  const auto list = dir.file("list.tsv");
  testing::write_file(list, "the\t9\nof\t4\nlong\t2\nlove\t2\n");
  const auto ngrams = dir.file("ngrams.tsv");
  testing::write_file(ngrams, "a b\t3\nb c\t1\nc d\t3\n");

  std::vector<std::map<std::string, std::string>> snapshots;
  for (int round = 0; round < 2; ++round) {
    const auto out = dir.path() / ("run" + std::to_string(round));
    std::filesystem::create_directories(out);
    const auto p = out.string() + "/";
    const auto stats = p + "stats.tsv";
    const std::vector<std::vector<std::string>> commands = {
        {"count", "--corpus", stream, "-o", stats},
        {"rank", "--stats", stats, "--window", "1:10", "--out-prefix", p, "-o",
         p + "rank.txt"},
        {"correlate", "--stats", stats, "--checkpoints", "5", "20", "--curve-out",
         p + "curve.tsv", "--shortcut", "-o", p + "corr.tsv"},
        {"correlate", "--stats", stats, "--fractional", "--format", "json", "-o",
         p + "corr.json"},
        {"ratio", "--stats", stats, "--out-prefix", p, "-o", p + "ratio.txt"},
        {"ffreq", "--list", list, "--ngram", ngrams, "--min-count", "2",
         "--out-prefix", p},
        {"lexsig", "--corpus", stream, "--stats", stats, "--k", "4", "-o",
         p + "sig.tsv"},
        {"lexsig", "--corpus", corpus.string(), "--list", list, "--n-docs", "10",
         "--compact", "-o", p + "sig_compact.txt"},
        {"compare-sig", "--corpus", stream, "--stats", stats, "-o", p + "cmp.tsv"},
        {"bench", "--kernel", "both", "--sizes", "500", "1000", "--trials", "1",
         "--dataset-out", p + "dataset.tsv", "-o", p + "bench.txt"},
    };
    for (const auto& args : commands) {
      const int code = run_cli(args);
      v.expect(code == 0, args[0] + " exit " + std::to_string(code));
    }
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(out)) {
      files[entry.path().filename().string()] = testing::read_file(entry.path());
    }
    // Timing values are measurements, not outputs of the inputs.
    files.erase("bench.txt");
    snapshots.push_back(std::move(files));
  }
  for (const auto& [name, content] : snapshots[0]) {
    const auto it = snapshots[1].find(name);
    v.expect(it != snapshots[1].end() && it->second == content,
             name + " differs between runs");
  }
  v.note(std::to_string(snapshots[0].size()) +
         " output files compared (bench timings excluded)");
  return v;
}

// --- 11 --------------------------------------------------------------------
// Returns nullopt when no table is supplied.
std::optional<Verdict> full_scale() {
  const char* path = std::getenv("CORPUSSTATS_FULLSCALE_STATS");
  if (path == nullptr || *path == '\0') return std::nullopt;
  Verdict v;
  const auto start = Clock::now();
  const auto table = read_stats(path);
  const auto aligned = align_ranks(table);
  const auto report = correlate(aligned.tc_rank, aligned.df_rank);
  const double elapsed = seconds_since(start);
  v.expect(table.size() >= 10'000'000,
           "table has " + std::to_string(table.size()) + " terms (< 10M)");
  v.expect(elapsed < 3600.0, "took " + fmt(elapsed) + " s");
  v.note("terms " + std::to_string(table.size()) + ", rho " +
         fmt(report.spearman_rho) + ", tau_b " + fmt(report.kendall_tau_b) +
         ", " + fmt(elapsed) + " s");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked-table count", worked_table_count},
      {2, "sports ranking", sports_ranking},
      {3, "top-20 ranking overlap", top20_overlap},
      {4, "Kendall fast/naive equivalence", kendall_equivalence},
      {5, "Spearman correctness", spearman_correctness},
      {6, "tau-to-rho anchor", tau_to_rho_anchor},
      {7, "ratio properties", ratio_properties},
      {8, "complexity reproduction", complexity},
      {9, "IDF and signature properties", signature_properties},
      {10, "CLI determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict verdict;
    try {
      verdict = c.check();
    } catch (const std::exception& e) {
      verdict.expect(false, std::string("exception: ") + e.what());
    }
    failed += !verdict.ok();
    std::cout << (verdict.ok() ? "PASS" : "FAIL") << "  [" << c.id << "] "
              << c.name << ": " << verdict.detail() << std::endl;
  }
  try {
    if (const auto v = full_scale()) {
      failed += !v->ok();
      std::cout << (v->ok() ? "PASS" : "FAIL") << "  [11] full-scale pipeline: "
                << v->detail() << std::endl;
    } else {
      std::cout << "SKIP  [11] full-scale pipeline: set "
                   "CORPUSSTATS_FULLSCALE_STATS to a stats table of >= 10M terms"
                << std::endl;
    }
  } catch (const std::exception& e) {
    ++failed;
    std::cout << "FAIL  [11] full-scale pipeline: " << e.what() << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed"
                            : std::to_string(failed) + " criterion(s) failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
