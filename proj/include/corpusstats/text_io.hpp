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
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace corpusstats {

// Line-oriented reader that tracks 1-based line numbers and strips a
// trailing carriage return.
class LineReader {
 public:
  explicit LineReader(std::string path);

  // Returns false at end of input. Throws IoError on read failure.
  bool next(std::string& line);

  std::size_t line_number() const { return line_number_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_number_ = 0;
};

// Output file that reports write failures as IoError on close().
class OutputFile {
 public:
  explicit OutputFile(std::string path);
  ~OutputFile();

  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  std::ostream& stream() { return out_; }
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  bool closed_ = false;
};

std::vector<std::string_view> split_tabs(std::string_view line);

// Parses a base-10 unsigned count. Throws ParseError naming source:line.
std::uint64_t parse_count(std::string_view field, const std::string& source,
                          std::size_t line);

// Shortest round-trip decimal representation.
std::string format_double(double value);

// Throws DataError instead of wrapping.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

}  // namespace corpusstats
