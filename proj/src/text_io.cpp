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

#include "corpusstats/text_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "corpusstats/error.hpp"

namespace corpusstats {

LineReader::LineReader(std::string path)
    : path_(std::move(path)), in_(path_, std::ios::binary) {
  if (!in_) throw IoError(path_, "cannot open for reading");
}

bool LineReader::next(std::string& line) {
  if (!std::getline(in_, line)) {
    if (in_.bad()) throw IoError(path_, "read failed");
    return false;
  }
  ++line_number_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

OutputFile::OutputFile(std::string path)
    : path_(std::move(path)), out_(path_, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError(path_, "cannot open for writing");
}

OutputFile::~OutputFile() {
  if (!closed_) out_.close();
}

void OutputFile::close() {
  closed_ = true;
  out_.flush();
  if (!out_) throw IoError(path_, "write failed");
  out_.close();
  if (out_.fail()) throw IoError(path_, "close failed");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::uint64_t parse_count(std::string_view field, const std::string& source,
                          std::size_t line) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(source, line,
                     "count '" + std::string(field) + "' exceeds 64 bits");
  }
  if (field.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(source, line,
                     "count '" + std::string(field) + "' is not an integer");
  }
  return value;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw DataError("count overflow: " + std::to_string(a) + " + " +
                    std::to_string(b) + " exceeds 64 bits");
  }
  return a + b;
}

}  // namespace corpusstats
