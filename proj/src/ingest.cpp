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

#include "corpusstats/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include "corpusstats/error.hpp"

namespace corpusstats {

namespace fs = std::filesystem;

struct CorpusReader::Impl {
  CorpusConfig config;
  std::unordered_set<std::string> ids;

  // Directory mode.
  std::vector<fs::path> files;
  std::size_t next_file = 0;

  // Stream mode.
  std::optional<LineReader> stream;
  std::size_t ordinal = 0;
  bool started = false;
  bool exhausted = false;
  std::optional<std::string> pending_id;  // id of the document being read
  std::size_t pending_line = 0;

  void claim_id(const std::string& id, const std::string& where) {
    if (!ids.insert(id).second) {
      throw DataError(where + ": duplicate document id '" + id + "'");
    }
  }

  // Classifies a stream line. Returns nullopt for ordinary text, otherwise
  // the explicit id (possibly empty).
  std::optional<std::string> separator_id(const std::string& line) const {
    const std::string& sep = config.separator;
    if (line.compare(0, sep.size(), sep) != 0) return std::nullopt;
    if (line.size() == sep.size()) return std::string();
    if (line[sep.size()] != ' ') {
      throw ParseError(stream->path(), stream->line_number(),
                       "malformed document separator '" + line + "'");
    }
    std::string id = line.substr(sep.size() + 1);
    if (id.empty() || id.find_first_of(" \t") != std::string::npos) {
      throw ParseError(stream->path(), stream->line_number(),
                       "malformed document separator '" + line +
                           "' (expected '" + sep + " <id>')");
    }
    return id;
  }

  std::optional<Document> next_file_document() {
    if (next_file == files.size()) return std::nullopt;
    const fs::path& path = files[next_file++];
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for reading");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError(path.string(), "read failed");
    Document doc;
    doc.id = path.stem().string();
    claim_id(doc.id, path.string());
    tokenize_into(text, config.tokenizer, doc.tokens);
    return doc;
  }

  std::optional<Document> next_stream_document() {
    if (exhausted) return std::nullopt;
    std::string line;
    Document doc;
    bool have_doc = started;
    std::optional<std::string> id = pending_id;
    std::size_t doc_line = pending_line;

    while (stream->next(line)) {
      auto sep = separator_id(line);
      if (!sep) {
        if (!have_doc) {
          // Text before the first separator forms the first document.
          have_doc = true;
          started = true;
          doc_line = stream->line_number();
        }
        tokenize_into(line, config.tokenizer, doc.tokens);
        continue;
      }
      std::optional<std::string> new_id;
      if (!sep->empty()) new_id = std::move(*sep);
      if (!have_doc) {
        have_doc = true;
        started = true;
        id = std::move(new_id);
        doc_line = stream->line_number();
        continue;
      }
      pending_id = std::move(new_id);
      pending_line = stream->line_number();
      return finish(std::move(doc), id, doc_line);
    }
    exhausted = true;
    if (!have_doc) return std::nullopt;
    return finish(std::move(doc), id, doc_line);
  }

  Document finish(Document doc, const std::optional<std::string>& id,
                  std::size_t line) {
    ++ordinal;
    doc.id = id ? *id : "doc" + std::to_string(ordinal);
    claim_id(doc.id, stream->path() + ":" + std::to_string(line));
    return doc;
  }
};

CorpusReader::CorpusReader(const fs::path& source, CorpusConfig config)
    : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  if (impl_->config.separator.empty()) {
    throw UsageError("document separator must not be empty");
  }
  std::error_code ec;
  const auto status = fs::status(source, ec);
  if (ec || !fs::exists(status)) {
    throw IoError(source.string(), "no such file or directory");
  }
  if (fs::is_directory(status)) {
    fs::directory_iterator it(source, ec);
    if (ec) throw IoError(source.string(), "cannot list directory");
    for (const auto& entry : it) {
      if (entry.path().extension() == ".txt" && entry.is_regular_file()) {
        impl_->files.push_back(entry.path());
      }
    }
    std::sort(impl_->files.begin(), impl_->files.end(),
              [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
              });
  } else {
    impl_->stream.emplace(source.string());
  }
}

CorpusReader::~CorpusReader() = default;
CorpusReader::CorpusReader(CorpusReader&&) noexcept = default;
CorpusReader& CorpusReader::operator=(CorpusReader&&) noexcept = default;

std::optional<Document> CorpusReader::next() {
  return impl_->stream ? impl_->next_stream_document()
                       : impl_->next_file_document();
}

std::vector<Document> read_corpus(const fs::path& source,
                                  const CorpusConfig& config) {
  CorpusReader reader(source, config);
  std::vector<Document> docs;
  while (auto doc = reader.next()) docs.push_back(std::move(*doc));
  return docs;
}

FrequencyListReader::FrequencyListReader(const fs::path& source,
                                         Format format)
    : reader_(source.string()), format_(format) {}

std::optional<FrequencyListEntry> FrequencyListReader::next() {
  while (reader_.next(line_)) {
    if (line_.empty() || line_.front() == '#') continue;
    const auto line = reader_.line_number();
    const auto fields = split_tabs(line_);
    const std::size_t max_fields =
        format_ == Format::frequency_list ? 3 : 2;
    if (fields.size() < 2 || fields.size() > max_fields) {
      throw ParseError(reader_.path(), line,
                       "expected " +
                           std::string(max_fields == 3
                                           ? "term<TAB>count[<TAB>L]"
                                           : "token<TAB>count") +
                           ", got " + std::to_string(fields.size()) +
                           " field(s)");
    }
    FrequencyListEntry entry;
    entry.term = std::string(fields[0]);
    if (entry.term.empty()) {
      throw ParseError(reader_.path(), line, "empty term");
    }
    entry.count = parse_count(fields[1], reader_.path(), line);
    if (entry.count == 0) {
      throw ParseError(reader_.path(), line,
                       "count must be positive for '" + entry.term + "'");
    }
    if (fields.size() == 3) {
      if (fields[2] != "L") {
        throw ParseError(reader_.path(), line,
                         "third column must be 'L', got '" +
                             std::string(fields[2]) + "'");
      }
      entry.lemmatized = true;
    }
    auto& seen = entry.lemmatized ? seen_lemma_ : seen_plain_;
    if (!seen.insert(entry.term).second) {
      throw ParseError(reader_.path(), line,
                       "duplicate term '" + entry.term +
                           "' (frequency lists must be pre-aggregated)");
    }
    return entry;
  }
  return std::nullopt;
}

std::vector<FrequencyListEntry> parse_frequency_list(const fs::path& source,
                                                     bool keep_lemmatized) {
  FrequencyListReader reader(source,
                             FrequencyListReader::Format::frequency_list);
  std::vector<FrequencyListEntry> entries;
  while (auto entry = reader.next()) {
    if (entry->lemmatized && !keep_lemmatized) continue;
    entries.push_back(std::move(*entry));
  }
  return entries;
}

std::vector<FrequencyListEntry> parse_ngram_counts(const fs::path& source,
                                                   std::uint64_t min_count) {
  FrequencyListReader reader(source, FrequencyListReader::Format::ngram_counts);
  std::vector<FrequencyListEntry> entries;
  while (auto entry = reader.next()) {
    if (entry->count >= min_count) entries.push_back(std::move(*entry));
  }
  return entries;
}

void write_frequency_list(std::ostream& out,
                          std::span<const FrequencyListEntry> entries) {
  for (const auto& e : entries) {
    if (e.term.find_first_of("\t\n\r") != std::string::npos) {
      throw DataError("term '" + e.term +
                      "' contains a tab or newline and cannot be written");
    }
    out << e.term << '\t' << e.count;
    if (e.lemmatized) out << "\tL";
    out << '\n';
  }
}

void write_frequency_list(const fs::path& path,
                          std::span<const FrequencyListEntry> entries) {
  OutputFile file(path.string());
  write_frequency_list(file.stream(), entries);
  file.close();
}

}  // namespace corpusstats
