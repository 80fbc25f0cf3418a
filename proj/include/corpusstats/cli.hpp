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
#include <string>
#include <utility>
#include <vector>

#include "corpusstats/bench.hpp"
#include "corpusstats/ingest.hpp"
#include "corpusstats/ratio.hpp"
#include "corpusstats/report.hpp"

namespace corpusstats::cli {

enum class Command {
  count,
  rank,
  correlate,
  ratio,
  ffreq,
  lexsig,
  compare_sig,
  bench,
};

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kIo = 3,
};

// Everything one invocation needs. Paths equal to "" or "-" for `out` mean
// standard output.
struct RunConfig {
  Command command = Command::count;

  // Inputs.
  std::string corpus;
  std::string doc;
  std::string stats;
  std::vector<std::string> lists;
  std::vector<std::string> ngrams;

  // Outputs.
  std::string out;
  std::string out_prefix;
  std::string curve_out;
  std::string dataset_out;
  OutputFormat format = OutputFormat::tsv;

  CorpusConfig corpus_config;

  // ingest
  bool keep_lemmatized = false;
  std::uint64_t min_count = 0;

  // rank / ffreq
  std::optional<std::pair<std::uint64_t, std::uint64_t>> window;
  CountKind which = CountKind::tc;

  // correlate
  std::vector<std::size_t> checkpoints;
  bool fractional = false;
  bool shortcut = false;

  // ratio
  std::vector<Rounding> roundings = {Rounding::two_decimals,
                                     Rounding::one_decimal, Rounding::integer};

  // lexsig / compare-sig
  std::size_t k = 10;
  std::optional<std::uint64_t> n_docs;
  bool tc_as_df = false;
  bool normalized_tf = false;
  bool compact = false;

  // bench
  std::vector<KendallKernel> kernels = {KendallKernel::naive,
                                        KendallKernel::fast};
  std::vector<std::uint64_t> sizes;
  int trials = 5;
  double budget_seconds = 300.0;
  std::vector<std::uint64_t> extrapolate_to = {11'300'000};
  bool parallel_cells = false;

  std::uint64_t seed = 42;
  int jobs = 0;  // 0: CORPUSSTATS_JOBS, then the OpenMP default
};

// Checks flag combinations. Throws UsageError naming the offending flag.
void validate(const RunConfig& config);

// Executes one command. Library errors propagate as exceptions;
// main_entry() maps them to exit codes.
void run(const RunConfig& config, std::ostream& out);

// Parses argv into a RunConfig. Throws UsageError; returns nullopt after
// printing help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv,
                                    std::ostream& out);

// Full entry point: parse, validate, run, map errors to exit codes and
// print them to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace corpusstats::cli
