// Copyright 2026 The assertkit Authors
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

#include "assertkit/corpus_miner.h"

#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <thread>

namespace assertkit {

namespace fs = std::filesystem;

namespace {

bool matches_any(const std::vector<std::string>& patterns, const std::string& s) {
  return std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) {
    return ::fnmatch(p.c_str(), s.c_str(), 0) == 0;
  });
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

constexpr std::string_view kLeadingPunct = "([{\"'";
constexpr std::string_view kTrailingPunct = ".,;:!?)]}\"'";

// Splits a word into leading punctuation, core, trailing punctuation. Inner
// punctuation (0.1, e.g) stays put.
void push_word(std::string_view word, std::vector<std::string>& out) {
  std::size_t b = 0;
  std::size_t e = word.size();
  std::vector<std::string> lead;
  std::vector<std::string> trail;
  while (b < e && kLeadingPunct.find(word[b]) != std::string_view::npos) {
    lead.emplace_back(1, word[b++]);
  }
  while (e > b && kTrailingPunct.find(word[e - 1]) != std::string_view::npos) {
    trail.emplace_back(1, word[--e]);
  }
  out.insert(out.end(), lead.begin(), lead.end());
  if (e > b) out.emplace_back(word.substr(b, e - b));
  out.insert(out.end(), trail.rbegin(), trail.rend());
}

bool comment_symbol_only(std::string_view t) {
  return !t.empty() && t.find_first_not_of("*/") == std::string_view::npos;
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

ScanResult scan_repositories(const fs::path& root, const ScanOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw MineError("corpus root is not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw MineError("cannot read corpus root " + root.string() + ": " + ec.message());

  struct Entry {
    std::string repo;
    std::string path;
    fs::path full;
  };
  std::vector<Entry> entries;
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file(ec)) continue;
    const fs::path rel = fs::relative(it->path(), root, ec);
    if (ec) continue;
    auto part = rel.begin();
    Entry e;
    if (std::next(part) == rel.end()) {
      e.repo = "_root";
      e.path = rel.generic_string();
    } else {
      e.repo = part->generic_string();
      fs::path rest;
      for (auto p = std::next(part); p != rel.end(); ++p) rest /= *p;
      e.path = rest.generic_string();
    }
    const std::string key = e.repo + "/" + e.path;
    if (!matches_any(options.include, key) || matches_any(options.exclude, key)) {
      continue;
    }
    e.full = it->path();
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.repo, a.path) < std::tie(b.repo, b.path);
  });

  ScanResult result;
  for (Entry& e : entries) {
    std::optional<std::string> content = read_file(e.full);
    if (!content) {
      ++result.unreadable;
      continue;
    }
    result.files.push_back({std::move(e.repo), std::move(e.path), std::move(*content)});
  }
  return result;
}

bool is_test_method(std::span<const std::string> annotations,
                    std::string_view method_name, std::string_view path) {
  if (std::find(annotations.begin(), annotations.end(), "Test") != annotations.end()) {
    return true;
  }
  if (!method_name.starts_with("test")) return false;
  const fs::path p{std::string(path)};
  for (const fs::path& segment : p.parent_path()) {
    if (segment == "test" || segment == "tests") return true;
  }
  return false;
}

std::optional<std::vector<std::string>> clean_doc_comment(std::string_view raw) {
  std::string_view text = raw;
  if (text.starts_with("/**")) text.remove_prefix(3);
  if (text.ends_with("*/")) text.remove_suffix(2);

  std::vector<std::string> out;
  int open_inline_tags = 0;
  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t line_end = text.find('\n', line_begin);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_begin, line_end - line_begin);
    line_begin = line_end + 1;

    std::size_t k = line.find_first_not_of(" \t\r");
    if (k == std::string_view::npos) continue;
    line.remove_prefix(k);
    while (!line.empty() && line.front() == '*') line.remove_prefix(1);  // gutter

    std::istringstream words{std::string(line)};
    std::string word;
    while (words >> word) {
      // Inline tags "{@link Foo}" and block tags "@param x" keep their text.
      std::size_t pos;
      while ((pos = word.find("{@")) != std::string::npos) {
        word.erase(pos, 2);
        ++open_inline_tags;
      }
      if (word.starts_with("@")) word.erase(0, 1);
      while (open_inline_tags > 0 && (pos = word.find('}')) != std::string::npos) {
        word.erase(pos, 1);
        --open_inline_tags;
      }
      if (word.empty() || comment_symbol_only(word)) continue;
      push_word(word, out);
    }
  }
  std::erase_if(out, [](const std::string& t) { return comment_symbol_only(t); });
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<std::vector<std::string>> extract_doc_comment(const MethodRecord& record) {
  if (!record.doc_comment) return std::nullopt;
  return clean_doc_comment(*record.doc_comment);
}

MineResult mine_files(std::span<const SourceFile> files, unsigned jobs) {
  struct Outcome {
    std::vector<MethodRecord> records;
    enum class Status { kParsed, kUndecodable, kUnparseable } status;
    std::string message;
  };
  std::vector<Outcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const SourceFile& f = files[i];
      Outcome& o = outcomes[i];
      if (!is_valid_utf8(f.content)) {
        o.status = Outcome::Status::kUndecodable;
        o.message = f.repo_id + "/" + f.path + ": not valid UTF-8";
        continue;
      }
      try {
        o.records = parse_source(f);
        o.status = Outcome::Status::kParsed;
      } catch (const std::exception& e) {
        o.status = Outcome::Status::kUnparseable;
        o.message = f.repo_id + "/" + f.path + ": " + e.what();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  MineResult result;
  result.stats.files_scanned = files.size();
  for (Outcome& o : outcomes) {
    switch (o.status) {
      case Outcome::Status::kParsed:
        ++result.stats.files_parsed;
        for (MethodRecord& r : o.records) {
          ++result.stats.methods;
          if (r.is_test) ++result.stats.test_methods;
          result.records.push_back(std::move(r));
        }
        break;
      case Outcome::Status::kUndecodable:
        ++result.stats.skipped_undecodable;
        result.diagnostics.push_back(std::move(o.message));
        break;
      case Outcome::Status::kUnparseable:
        ++result.stats.skipped_unparseable;
        result.diagnostics.push_back(std::move(o.message));
        break;
    }
  }
  return result;
}

MineResult mine_corpus(const fs::path& root, const ScanOptions& options, unsigned jobs) {
  ScanResult scan = scan_repositories(root, options);
  MineResult result = mine_files(scan.files, jobs);
  result.stats.files_scanned += scan.unreadable;
  result.stats.skipped_unreadable = scan.unreadable;
  return result;
}

Json to_json(const MineStats& s) {
  Json j;
  j["files_scanned"] = s.files_scanned;
  j["files_parsed"] = s.files_parsed;
  j["skipped_unreadable"] = s.skipped_unreadable;
  j["skipped_undecodable"] = s.skipped_undecodable;
  j["skipped_unparseable"] = s.skipped_unparseable;
  j["methods"] = s.methods;
  j["test_methods"] = s.test_methods;
  return j;
}

}  // namespace assertkit
