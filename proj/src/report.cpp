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

#include "corpusstats/report.hpp"

#include <cmath>
#include <sstream>

#include "corpusstats/text_io.hpp"
#include "json.hpp"

namespace corpusstats {

Report& Report::put(std::string key, Value value) {
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

void Report::write(std::ostream& out, OutputFormat format) const {
  if (format == OutputFormat::tsv) {
    for (const auto& [key, value] : fields_) {
      out << key << '\t';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              out << (v ? "true" : "false");
            } else {
              out << v;
            }
          },
          value);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [key, value] : fields_) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(v)) {
              doc[key] = v;
            } else {
              doc[key] = nullptr;
            }
          } else {
            doc[key] = v;
          }
        },
        value);
  }
  out << doc.dump(2) << '\n';
}

std::string Report::str(OutputFormat format) const {
  std::ostringstream out;
  write(out, format);
  return out.str();
}

Report to_report(const CorrelationReport& r) {
  Report report;
  report.add("n", r.n)
      .add("rho", r.spearman_rho)
      .add("tau_a", r.kendall_tau_a)
      .add("tau_b", r.kendall_tau_b)
      .add("rho_estimated_from_tau", r.rho_estimated_from_tau)
      .add("p", r.p_value_rho)
      .add("p_floor", kPValueFloor)
      .add("concordant", r.counts.concordant)
      .add("discordant", r.counts.discordant)
      .add("ties_x", r.counts.ties_x)
      .add("ties_y", r.counts.ties_y)
      .add("ties_xy", r.counts.ties_xy)
      .add("rank_scheme",
           r.scheme == RankScheme::sports ? "sports" : "fractional");
  if (r.spearman_shortcut) {
    report.add("rho_shortcut", *r.spearman_shortcut);
  }
  return report;
}

Report to_report(const RatioSummary& summary,
                 const std::vector<RatioHistogram>& histograms) {
  Report report;
  report.add("terms", summary.count)
      .add("mean", summary.mean)
      .add("stddev", summary.stddev)
      .add("median", summary.median);
  for (const auto& hist : histograms) {
    report.add("mode_" + std::string(to_string(hist.rounding)),
               hist.label(hist.mode()));
  }
  return report;
}

}  // namespace corpusstats
