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
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "corpusstats/correlation.hpp"
#include "corpusstats/ratio.hpp"

namespace corpusstats {

enum class OutputFormat { tsv, json };

// Ordered flat key-value document. TSV renders `key<TAB>value` lines; JSON
// renders one object with keys in insertion order.
class Report {
 public:
  using Value = std::variant<std::string, double, std::uint64_t, std::int64_t,
                             bool>;

  // Integers map to the signed or unsigned 64-bit alternative, floating
  // point to double, anything string-like to std::string.
  template <typename T>
  Report& add(std::string key, T&& value) {
    using U = std::decay_t<T>;
    if constexpr (std::is_same_v<U, bool>) {
      return put(std::move(key), Value(static_cast<bool>(value)));
    } else if constexpr (std::is_floating_point_v<U>) {
      return put(std::move(key), Value(static_cast<double>(value)));
    } else if constexpr (std::is_integral_v<U> && std::is_signed_v<U>) {
      return put(std::move(key), Value(static_cast<std::int64_t>(value)));
    } else if constexpr (std::is_integral_v<U>) {
      return put(std::move(key), Value(static_cast<std::uint64_t>(value)));
    } else {
      return put(std::move(key), Value(std::string(std::forward<T>(value))));
    }
  }

  const std::vector<std::pair<std::string, Value>>& fields() const {
    return fields_;
  }

  void write(std::ostream& out, OutputFormat format) const;
  std::string str(OutputFormat format) const;

 private:
  Report& put(std::string key, Value value);

  std::vector<std::pair<std::string, Value>> fields_;
};

Report to_report(const CorrelationReport& report);

// Summary stanza shared by the histograms of one table: unrounded
// statistics plus the mode of every supplied histogram.
Report to_report(const RatioSummary& summary,
                 const std::vector<RatioHistogram>& histograms);

}  // namespace corpusstats
