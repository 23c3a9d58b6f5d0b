/*
 * Copyright 2026 The satdscan Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "satd/preprocess.hpp"

#include <cmath>
#include <fstream>

#include "satd/error.hpp"
#include "satd/scan.hpp"
#include "satd/unicode.hpp"

namespace satd {

namespace {

bool preserved_mark(char32_t c) { return c == U'"' || c == U'\'' || c == U'!'; }

std::vector<std::string_view> split_spaces(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(' ', begin);
    if (end == std::string_view::npos) end = text.size();
    if (end > begin) tokens.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return tokens;
}

}  // namespace

std::optional<std::string> normalize(std::string_view raw, const StopWordPolicy& policy) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char32_t c : unicode::decode(raw)) {
    if (unicode::is_alphabetic(c)) {
      c = unicode::fold_case(c);
    } else if (!preserved_mark(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    unicode::append_utf8(out, c);
  }

  if (policy.mode == StopWordPolicy::Mode::CustomList && !policy.words.empty()) {
    std::string kept;
    for (std::string_view token : split_spaces(out)) {
      if (policy.words.contains(std::string(token))) continue;
      if (!kept.empty()) kept.push_back(' ');
      kept += token;
    }
    out = std::move(kept);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool is_normalized(std::string_view text) {
  if (text.empty() || text.front() == ' ' || text.back() == ' ') return false;
  char32_t prev = 0;
  for (char32_t c : unicode::decode(text)) {
    if (c == U' ') {
      if (prev == U' ') return false;
    } else if (!preserved_mark(c)) {
      if (!unicode::is_alphabetic(c) || unicode::fold_case(c) != c) return false;
    }
    prev = c;
  }
  return true;
}

StopWordPolicy StopWordPolicy::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read stop-word list " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (auto token = normalize(line)) {
      for (std::string_view t : split_spaces(*token)) words.emplace(t);
    }
  }
  return custom(std::move(words));
}

TokenStats token_stats(std::span<const std::string> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "token_stats needs at least one comment");
  std::vector<double> counts;
  counts.reserve(corpus.size());
  double sum = 0.0;
  for (const auto& text : corpus) {
    counts.push_back(static_cast<double>(split_spaces(text).size()));
    sum += counts.back();
  }
  const double n = static_cast<double>(counts.size());
  const double mean = sum / n;
  double squares = 0.0;
  for (double c : counts) squares += (c - mean) * (c - mean);
  return TokenStats{mean, std::sqrt(squares / n)};
}

namespace kernels {

std::vector<std::optional<std::string>> normalize_batch_serial(std::span<const std::string> raw,
                                                               const StopWordPolicy& policy) {
  std::vector<std::optional<std::string>> out;
  out.reserve(raw.size());
  for (const auto& text : raw) out.push_back(normalize(text, policy));
  return out;
}

std::vector<std::optional<std::string>> normalize_batch_parallel(std::span<const std::string> raw,
                                                                 const StopWordPolicy& policy, int jobs) {
  std::vector<std::optional<std::string>> out(raw.size());
  const auto n = static_cast<std::ptrdiff_t>(raw.size());
#pragma omp parallel for schedule(static) num_threads(resolve_jobs(jobs))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = normalize(raw[static_cast<std::size_t>(i)], policy);
  }
  return out;
}

}  // namespace kernels

}  // namespace satd
