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

#include "corpusstats/cli.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "corpusstats/correlation.hpp"
#include "corpusstats/error.hpp"
#include "corpusstats/lexsig.hpp"
#include "corpusstats/ranking.hpp"
#include "corpusstats/stats.hpp"
#include "corpusstats/text_io.hpp"
#include "json.hpp"

namespace corpusstats::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kCountBatch = 4096;

const std::vector<std::uint64_t> kNaiveDefaultSizes = {1000, 2000, 4000,
                                                       8000};
const std::vector<std::uint64_t> kFastDefaultSizes = {100000, 200000, 400000,
                                                      800000};

bool is_stdout(const std::string& path) { return path.empty() || path == "-"; }

void write_to(const std::string& path, std::ostream& out,
              const std::function<void(std::ostream&)>& body) {
  if (is_stdout(path)) {
    body(out);
    out.flush();
    return;
  }
  OutputFile file(path);
  body(file.stream());
  file.close();
}

std::string prefixed(const std::string& prefix, const std::string& name) {
  if (prefix.empty()) return name;
  if (prefix.back() == '/') return prefix + name;
  return prefix + "." + name;
}

int effective_jobs(const RunConfig& config) {
  if (config.jobs > 0) return config.jobs;
  if (const char* env = std::getenv("CORPUSSTATS_JOBS")) {
    int value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
      throw UsageError("CORPUSSTATS_JOBS must be a non-negative integer, got '" +
                       std::string(text) + "'");
    }
    return value;
  }
  return 0;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw UsageError(message);
}

Document read_single_document(const std::string& path,
                              const TokenizerConfig& tokenizer) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(path, "read failed");
  return {fs::path(path).stem().string(), tokenize(text, tokenizer)};
}

std::vector<Document> load_documents(const RunConfig& config) {
  if (!config.doc.empty()) {
    return {read_single_document(config.doc, config.corpus_config.tokenizer)};
  }
  return read_corpus(config.corpus, config.corpus_config);
}

void run_count(const RunConfig& config, std::ostream& out, int jobs) {
  CorpusReader reader(config.corpus, config.corpus_config);
  TermStatsTable total;
  std::vector<Document> batch;
  auto flush = [&] {
    merge_into(total, compute_tc_df(batch, jobs));
    batch.clear();
  };
  while (auto doc = reader.next()) {
    batch.push_back(std::move(*doc));
    if (batch.size() == kCountBatch) flush();
  }
  if (!batch.empty()) flush();
  write_to(config.out, out, [&](std::ostream& s) { write_stats(s, total); });
}

void run_rank(const RunConfig& config, std::ostream& out) {
  Report report;
  if (!config.lists.empty()) {
    const auto entries =
        parse_frequency_list(config.lists.front(), config.keep_lemmatized);
    const auto ranked = sports_rank(term_values(entries));
    report.add("terms", static_cast<std::uint64_t>(ranked.items.size()));
    if (!config.out_prefix.empty()) {
      write_to(prefixed(config.out_prefix, "tc_ranks.tsv"), out,
               [&](std::ostream& s) { write_ranked_list(s, ranked); });
    }
  } else {
    const auto table = read_stats(config.stats);
    const auto by_tc = sports_rank(term_values(table, CountKind::tc));
    const auto by_df = sports_rank(term_values(table, CountKind::df));
    report.add("terms", static_cast<std::uint64_t>(table.size()))
        .add("documents", table.doc_count());
    if (config.window) {
      const auto overlap = ranking_overlap(by_tc, by_df, config.window->first,
                                           config.window->second);
      report.add("window_from", config.window->first)
          .add("window_to", config.window->second)
          .add("union", static_cast<std::uint64_t>(overlap.union_size))
          .add("intersection",
               static_cast<std::uint64_t>(overlap.intersection_size));
    }
    if (!config.out_prefix.empty()) {
      write_to(prefixed(config.out_prefix, "tc_ranks.tsv"), out,
               [&](std::ostream& s) { write_ranked_list(s, by_tc); });
      write_to(prefixed(config.out_prefix, "df_ranks.tsv"), out,
               [&](std::ostream& s) { write_ranked_list(s, by_df); });
      if (!table.empty()) {
        const auto aligned = align_ranks(table);
        write_to(prefixed(config.out_prefix, "scatter.tsv"), out,
                 [&](std::ostream& s) { write_rank_scatter(s, aligned); });
      }
    }
  }
  write_to(config.out, out,
           [&](std::ostream& s) { report.write(s, config.format); });
}

void run_correlate(const RunConfig& config, std::ostream& out) {
  const auto table = read_stats(config.stats);
  if (table.size() < 2) {
    throw DegenerateInputError(config.stats + ": correlation needs at least "
                               "2 terms, table has " +
                               std::to_string(table.size()));
  }
  const auto ranks = align_ranks(table);
  CorrelationOptions options;
  options.scheme =
      config.fractional ? RankScheme::fractional : RankScheme::sports;
  options.shortcut_diagnostic = config.shortcut;
  const auto result = correlate(ranks.tc_rank, ranks.df_rank, options);
  if (!config.curve_out.empty()) {
    const auto curve = prefix_correlation_curve(
        ranks.tc_rank, ranks.df_rank, config.checkpoints, options.scheme);
    write_to(config.curve_out, out, [&](std::ostream& s) {
      for (const auto& w : curve.warnings) s << "# " << w << '\n';
      write_curve(s, curve);
    });
  }
  write_to(config.out, out, [&](std::ostream& s) {
    to_report(result).write(s, config.format);
  });
}

void run_ratio(const RunConfig& config, std::ostream& out) {
  const auto table = read_stats(config.stats);
  std::vector<RatioHistogram> hists;
  for (const auto rounding : config.roundings) {
    hists.push_back(ratio_histogram(table, rounding));
  }
  if (!config.out_prefix.empty()) {
    for (const auto& hist : hists) {
      write_to(prefixed(config.out_prefix,
                        "ratio_" + std::string(to_string(hist.rounding)) +
                            ".tsv"),
               out, [&](std::ostream& s) { write_histogram(s, hist); });
    }
  }
  write_to(config.out, out, [&](std::ostream& s) {
    to_report(hists.front().summary, hists).write(s, config.format);
  });
}

void run_ffreq(const RunConfig& config, std::ostream& out) {
  struct Input {
    std::string path;
    std::map<std::uint64_t, std::uint64_t> ffreq;
  };
  std::vector<Input> inputs;
  for (const auto& path : config.lists) {
    const auto entries = parse_frequency_list(path, config.keep_lemmatized);
    inputs.push_back({path, frequency_of_frequencies(entries)});
  }
  for (const auto& path : config.ngrams) {
    const auto entries = parse_ngram_counts(path, config.min_count);
    if (entries.empty()) {
      throw DataError(path + ": no entries at or above min count " +
                      std::to_string(config.min_count));
    }
    inputs.push_back({path, frequency_of_frequencies(entries)});
  }
  if (!config.stats.empty()) {
    inputs.push_back({config.stats, frequency_of_frequencies(
                                        read_stats(config.stats),
                                        config.which)});
  }

  if (config.out_prefix.empty()) {
    write_to(config.out, out, [&](std::ostream& s) {
      write_frequency_of_frequencies(s, inputs.front().ffreq);
    });
    return;
  }
  std::set<std::string> names;
  Report report;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto name = fs::path(inputs[i].path).stem().string() + ".ffreq.tsv";
    if (!names.insert(name).second) {
      throw UsageError("inputs share the file stem behind '" + name +
                       "'; rename one of them");
    }
    const auto path = prefixed(config.out_prefix, name);
    write_to(path, out, [&](std::ostream& s) {
      write_frequency_of_frequencies(s, inputs[i].ffreq);
    });
    std::uint64_t terms = 0;
    for (const auto& [count, n] : inputs[i].ffreq) terms += n;
    const auto key = "input" + std::to_string(i + 1);
    report.add(key + "_source", inputs[i].path)
        .add(key + "_file", path)
        .add(key + "_terms", terms)
        .add(key + "_distinct_counts",
             static_cast<std::uint64_t>(inputs[i].ffreq.size()));
  }
  write_to(config.out, out,
           [&](std::ostream& s) { report.write(s, config.format); });
}

BackgroundModel primary_model(const RunConfig& config) {
  if (!config.lists.empty()) {
    const auto entries =
        parse_frequency_list(config.lists.front(), config.keep_lemmatized);
    return BackgroundModel::from_frequency_list(entries, *config.n_docs);
  }
  return BackgroundModel::from_table(
      read_stats(config.stats),
      config.tc_as_df ? DfMode::tc_as_df : DfMode::measured_df,
      config.n_docs);
}

void run_lexsig(const RunConfig& config, std::ostream& out) {
  const auto model = primary_model(config);
  const auto docs = load_documents(config);
  const auto sigs = lexical_signatures(
      docs, model, config.k,
      config.normalized_tf ? TfMode::length_normalized : TfMode::raw);
  write_to(config.out, out, [&](std::ostream& s) {
    if (config.format == OutputFormat::json) {
      auto doc = nlohmann::ordered_json::array();
      for (const auto& sig : sigs) {
        auto terms = nlohmann::ordered_json::array();
        for (const auto& t : sig.terms) {
          terms.push_back({{"term", t.term}, {"weight", t.weight}});
        }
        doc.push_back({{"doc_id", sig.doc_id}, {"terms", terms}});
      }
      s << doc.dump(2) << '\n';
    } else if (config.compact) {
      write_signatures_compact(s, sigs);
    } else {
      write_signatures(s, sigs);
    }
  });
}

void run_compare_sig(const RunConfig& config, std::ostream& out) {
  const auto table = read_stats(config.stats);
  const auto model_a =
      BackgroundModel::from_table(table, DfMode::measured_df, config.n_docs);
  std::optional<BackgroundModel> model_b;
  if (!config.lists.empty()) {
    const auto entries =
        parse_frequency_list(config.lists.front(), config.keep_lemmatized);
    model_b = BackgroundModel::from_frequency_list(entries, *config.n_docs);
  } else {
    model_b = BackgroundModel::from_table(table, DfMode::tc_as_df,
                                          config.n_docs);
  }
  const auto docs = load_documents(config);
  const auto result = compare_signatures(
      model_a, *model_b, docs, config.k,
      config.normalized_tf ? TfMode::length_normalized : TfMode::raw);
  write_to(config.out, out, [&](std::ostream& s) {
    if (config.format == OutputFormat::json) {
      auto doc = nlohmann::ordered_json::array();
      for (const auto& c : result) {
        auto shifts = nlohmann::ordered_json::array();
        for (const auto& sh : c.shifts) {
          nlohmann::ordered_json j;
          j["term"] = sh.term;
          j["position_a"] = sh.position_a ? nlohmann::ordered_json(*sh.position_a)
                                          : nlohmann::ordered_json(nullptr);
          j["position_b"] = sh.position_b ? nlohmann::ordered_json(*sh.position_b)
                                          : nlohmann::ordered_json(nullptr);
          j["dropped"] = sh.dropped;
          shifts.push_back(std::move(j));
        }
        nlohmann::ordered_json j;
        j["doc_id"] = c.doc_id;
        j["overlap"] = c.overlap;
        j["size_a"] = c.size_a;
        j["size_b"] = c.size_b;
        j["tau_b"] = c.tau_b ? nlohmann::ordered_json(*c.tau_b)
                             : nlohmann::ordered_json(nullptr);
        j["shifts"] = std::move(shifts);
        doc.push_back(std::move(j));
      }
      s << doc.dump(2) << '\n';
    } else {
      write_signature_comparison(s, result);
    }
  });
}

void run_bench(const RunConfig& config, std::ostream& out, int jobs) {
  if (!config.dataset_out.empty()) {
    const std::uint64_t n =
        config.sizes.empty() ? 1000 : config.sizes.front();
    write_to(config.dataset_out, out, [&](std::ostream& s) {
      write_synthetic_pairs(s, synthetic_rank_pairs(n, config.seed));
    });
  }
  BenchOptions options;
  options.trials = config.trials;
  options.seed = config.seed;
  options.budget_seconds = config.budget_seconds;
  options.threads = config.parallel_cells
                        ? (jobs > 0 ? jobs : omp_get_max_threads())
                        : 1;
  Report report;
  report.add("seed", config.seed).add("trials", config.trials);
  if (config.parallel_cells) {
    report.add("note", "parallel cells: timings include threading effects");
  }
  for (const auto kernel : config.kernels) {
    const auto& sizes = !config.sizes.empty() ? config.sizes
                        : kernel == KendallKernel::naive ? kNaiveDefaultSizes
                                                         : kFastDefaultSizes;
    auto curve = time_kernel(kernel, sizes, options);
    if (curve.fit) {
      for (const auto target : config.extrapolate_to) {
        curve.extrapolations[target] = extrapolate(curve, target);
      }
    }
    const std::string name(to_string(kernel));
    if (!config.out_prefix.empty()) {
      write_to(prefixed(config.out_prefix, "bench_" + name + ".tsv"), out,
               [&](std::ostream& s) { write_timing_points(s, curve); });
    }
    report.add(name + "_points", static_cast<std::uint64_t>(curve.points.size()))
        .add(name + "_threads", curve.threads)
        .add(name + "_truncated", curve.truncated);
    if (curve.fit) {
      report.add(name + "_exponent", curve.fit->exponent)
          .add(name + "_coefficient", curve.fit->coefficient)
          .add(name + "_r_squared", curve.fit->r_squared);
      for (const auto& [target, seconds] : curve.extrapolations) {
        report.add(name + "_extrapolate_" + std::to_string(target), seconds);
      }
    } else {
      report.add(name + "_fit", "unavailable");
    }
  }
  write_to(config.out, out,
           [&](std::ostream& s) { report.write(s, config.format); });
}

}  // namespace

void validate(const RunConfig& c) {
  require(c.jobs >= 0, "--jobs must be >= 0");
  require(!c.corpus_config.separator.empty(), "--separator must not be empty");
  switch (c.command) {
    case Command::count:
      require(!c.corpus.empty(), "count: --corpus is required");
      break;
    case Command::rank:
      require(c.stats.empty() != c.lists.empty(),
              "rank: give exactly one of --stats or --list");
      require(c.lists.size() <= 1, "rank: --list accepts one file");
      require(!c.window || !c.stats.empty(),
              "rank: --window compares TC and DF rankings and needs --stats");
      if (c.window) {
        require(c.window->first >= 1 && c.window->first <= c.window->second,
                "rank: --window needs 1 <= FROM <= TO");
      }
      break;
    case Command::correlate:
      require(!c.stats.empty(), "correlate: --stats is required");
      require(c.curve_out.empty() == c.checkpoints.empty(),
              "correlate: --curve-out and --checkpoints go together");
      break;
    case Command::ratio:
      require(!c.stats.empty(), "ratio: --stats is required");
      require(!c.roundings.empty(), "ratio: --rounding needs a value");
      break;
    case Command::ffreq: {
      const std::size_t inputs =
          c.lists.size() + c.ngrams.size() + (c.stats.empty() ? 0 : 1);
      require(inputs >= 1, "ffreq: give --list, --ngram or --stats");
      require(inputs == 1 || !c.out_prefix.empty(),
              "ffreq: several inputs need --out-prefix");
      break;
    }
    case Command::lexsig:
      require(c.doc.empty() != c.corpus.empty(),
              "lexsig: give exactly one of --doc or --corpus");
      require(c.stats.empty() != c.lists.empty(),
              "lexsig: give exactly one of --stats or --list");
      require(c.lists.size() <= 1, "lexsig: --list accepts one file");
      require(c.lists.empty() || c.n_docs,
              "lexsig: --list carries no document count; --n-docs is required");
      require(c.k >= 1, "lexsig: --k must be >= 1");
      require(!c.n_docs || *c.n_docs >= 1, "lexsig: --n-docs must be >= 1");
      break;
    case Command::compare_sig:
      require(c.doc.empty() != c.corpus.empty(),
              "compare-sig: give exactly one of --doc or --corpus");
      require(!c.stats.empty(), "compare-sig: --stats is required");
      require(c.lists.size() <= 1, "compare-sig: --list accepts one file");
      require(c.lists.empty() || c.n_docs,
              "compare-sig: --list carries no document count; --n-docs is "
              "required");
      require(c.k >= 1, "compare-sig: --k must be >= 1");
      require(!c.n_docs || *c.n_docs >= 1,
              "compare-sig: --n-docs must be >= 1");
      break;
    case Command::bench:
      require(c.trials >= 1, "bench: --trials must be >= 1");
      require(c.budget_seconds > 0, "bench: --budget must be positive");
      require(!c.kernels.empty(), "bench: --kernel needs a value");
      for (std::size_t i = 0; i < c.sizes.size(); ++i) {
        require(c.sizes[i] >= 2 && (i == 0 || c.sizes[i] > c.sizes[i - 1]),
                "bench: --sizes must be strictly ascending and >= 2");
      }
      for (const auto t : c.extrapolate_to) {
        require(t >= 1, "bench: --extrapolate targets must be >= 1");
      }
      break;
  }
}

void run(const RunConfig& config, std::ostream& out) {
  validate(config);
  const int jobs = effective_jobs(config);
  const int saved = omp_get_max_threads();
  if (jobs > 0) omp_set_num_threads(jobs);
  struct Restore {
    int threads;
    ~Restore() { omp_set_num_threads(threads); }
  } restore{saved};

  switch (config.command) {
    case Command::count: return run_count(config, out, jobs);
    case Command::rank: return run_rank(config, out);
    case Command::correlate: return run_correlate(config, out);
    case Command::ratio: return run_ratio(config, out);
    case Command::ffreq: return run_ffreq(config, out);
    case Command::lexsig: return run_lexsig(config, out);
    case Command::compare_sig: return run_compare_sig(config, out);
    case Command::bench: return run_bench(config, out, jobs);
  }
}

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out,-o", c.out, "Main output file ('-' for stdout)");
  sub->add_option("--format", c.format, "Report format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"tsv", OutputFormat::tsv},
                                              {"json", OutputFormat::json}}));
  sub->add_option("--seed", c.seed, "Seed for all randomness");
  sub->add_option("--jobs,-j", c.jobs,
                  "Worker threads (default: $CORPUSSTATS_JOBS, then all)");
}

void add_tokenizer(CLI::App* sub, RunConfig& c) {
  auto& t = c.corpus_config.tokenizer;
  sub->add_option("--separator", c.corpus_config.separator,
                  "Document separator line for stream corpora");
  sub->add_flag("--no-case-fold", [&t](std::int64_t) { t.case_fold = false; },
                "Keep letter case");
  sub->add_flag("--keep-punctuation",
                [&t](std::int64_t) { t.strip_punctuation = false; },
                "Do not trim punctuation from token ends");
  sub->add_flag("--drop-apostrophes", t.drop_internal_apostrophes,
                "Delete apostrophes inside tokens");
}

std::pair<std::uint64_t, std::uint64_t> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  auto number = [&](std::string_view part) {
    std::uint64_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw UsageError("--window expects FROM:TO, got '" + s + "'");
    }
    return v;
  };
  if (colon == std::string::npos) {
    throw UsageError("--window expects FROM:TO, got '" + s + "'");
  }
  const std::string_view view(s);
  return {number(view.substr(0, colon)), number(view.substr(colon + 1))};
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out) {
  RunConfig c;
  CLI::App app{"Corpus statistics: term counts, document frequencies, rank "
               "correlation, TF/DF ratios and lexical signatures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "corpusstats 1.0.0");

  std::string window;
  std::string which = "tc";
  std::vector<std::string> roundings;
  std::string kernel = "both";
  std::optional<std::uint64_t> n_docs;

  auto* count = app.add_subcommand("count", "Count TC and DF over a corpus");
  count->add_option("--corpus", c.corpus, "Directory of *.txt or stream file")
      ->required();
  add_tokenizer(count, c);
  add_common(count, c);

  auto* rank = app.add_subcommand("rank", "Sports-rank terms by TC and DF");
  rank->add_option("--stats", c.stats, "Stats file");
  rank->add_option("--list", c.lists, "Frequency list (TC only)");
  rank->add_flag("--keep-lemmatized", c.keep_lemmatized,
                 "Keep entries flagged L");
  rank->add_option("--window", window, "Overlap window FROM:TO");
  rank->add_option("--out-prefix", c.out_prefix,
                   "Prefix for rank and scatter files");
  add_common(rank, c);

  auto* corr = app.add_subcommand("correlate",
                                  "Spearman and Kendall between TC and DF ranks");
  corr->add_option("--stats", c.stats, "Stats file")->required();
  corr->add_option("--checkpoints", c.checkpoints, "Prefix sizes for the curve")
      ->delimiter(',');
  corr->add_option("--curve-out", c.curve_out, "Prefix curve TSV");
  corr->add_flag("--fractional", c.fractional, "Re-rank with mid-ranks");
  corr->add_flag("--shortcut", c.shortcut,
                 "Also report the 6*sum(d^2) Spearman shortcut");
  add_common(corr, c);

  auto* ratio = app.add_subcommand("ratio", "TC/DF ratio histograms");
  ratio->add_option("--stats", c.stats, "Stats file")->required();
  ratio->add_option("--rounding", roundings, "all, two, one or int")
      ->delimiter(',')
      ->check(CLI::IsMember({"all", "two", "one", "int"}));
  ratio->add_option("--out-prefix", c.out_prefix, "Prefix for histogram files");
  add_common(ratio, c);

  auto* ffreq = app.add_subcommand("ffreq", "Frequency of frequencies");
  ffreq->add_option("--list", c.lists, "Frequency list (repeatable)");
  ffreq->add_option("--ngram", c.ngrams, "N-gram count file (repeatable)");
  ffreq->add_option("--min-count", c.min_count, "Threshold for --ngram inputs");
  ffreq->add_option("--stats", c.stats, "Stats file");
  ffreq->add_option("--which", which, "tc or df, for --stats")
      ->check(CLI::IsMember({"tc", "df"}));
  ffreq->add_flag("--keep-lemmatized", c.keep_lemmatized,
                  "Keep entries flagged L");
  ffreq->add_option("--out-prefix", c.out_prefix, "Prefix for per-input files");
  add_common(ffreq, c);

  auto add_signature_options = [&](CLI::App* sub) {
    sub->add_option("--doc", c.doc, "Single document file");
    sub->add_option("--corpus", c.corpus, "Corpus directory or stream");
    sub->add_option("--stats", c.stats, "Stats file background");
    sub->add_option("--list", c.lists, "TC-only frequency list background");
    sub->add_flag("--keep-lemmatized", c.keep_lemmatized,
                  "Keep entries flagged L");
    sub->add_option("--k", c.k, "Signature length");
    sub->add_option("--n-docs", n_docs, "Estimated background document count");
    sub->add_flag("--normalized-tf", c.normalized_tf,
                  "Divide term counts by document length");
    add_tokenizer(sub, c);
    add_common(sub, c);
  };
  auto* lexsig = app.add_subcommand("lexsig", "Top-k TF-IDF lexical signatures");
  add_signature_options(lexsig);
  lexsig->add_flag("--tc-as-df", c.tc_as_df, "Use TC in place of DF");
  lexsig->add_flag("--compact", c.compact, "One 'doc_id: t1 ... tk' line each");

  auto* cmp = app.add_subcommand(
      "compare-sig", "Compare signatures under measured DF and TC-as-DF");
  add_signature_options(cmp);

  auto* bench = app.add_subcommand("bench", "Time the Kendall kernels");
  bench->add_option("--kernel", kernel, "naive, fast or both")
      ->check(CLI::IsMember({"naive", "fast", "both"}));
  bench->add_option("--sizes", c.sizes, "Ascending input sizes")
      ->delimiter(',');
  bench->add_option("--trials", c.trials, "Trials per size (median kept)");
  bench->add_option("--budget", c.budget_seconds, "Seconds per cell");
  bench->add_option("--extrapolate", c.extrapolate_to, "Target sizes")
      ->delimiter(',');
  bench->add_flag("--parallel", c.parallel_cells,
                  "Let kernels use --jobs threads");
  bench->add_option("--out-prefix", c.out_prefix, "Prefix for curve files");
  bench->add_option("--dataset-out", c.dataset_out,
                    "Write the synthetic sample for the first size");
  add_common(bench, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << "corpusstats 1.0.0\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::map<CLI::App*, Command> commands = {
      {count, Command::count},   {rank, Command::rank},
      {corr, Command::correlate}, {ratio, Command::ratio},
      {ffreq, Command::ffreq},   {lexsig, Command::lexsig},
      {cmp, Command::compare_sig}, {bench, Command::bench}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) c.command = command;
  }
  if (!window.empty()) c.window = parse_window(window);
  c.which = which == "df" ? CountKind::df : CountKind::tc;
  c.n_docs = n_docs;
  if (!roundings.empty()) {
    std::set<Rounding> chosen;
    for (const auto& r : roundings) {
      if (r == "all" || r == "two") chosen.insert(Rounding::two_decimals);
      if (r == "all" || r == "one") chosen.insert(Rounding::one_decimal);
      if (r == "all" || r == "int") chosen.insert(Rounding::integer);
    }
    c.roundings.assign(chosen.begin(), chosen.end());
  }
  if (kernel == "naive") c.kernels = {KendallKernel::naive};
  if (kernel == "fast") c.kernels = {KendallKernel::fast};
  return c;
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  try {
    auto config = parse_args(argc, argv, out);
    if (!config) return kOk;
    run(*config, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace corpusstats::cli
