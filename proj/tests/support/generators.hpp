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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "satd/corpus.hpp"
#include "satd/random.hpp"

namespace satd::testing {

// Lowercase pseudo-word built from `index` in base 26 behind `prefix`.
std::string word(const std::string& prefix, std::size_t index);

struct SyntheticCorpusSpec {
  std::size_t per_label = 300;
  double noise = 0.2;         // fraction of tokens drawn from another label's vocabulary
  std::size_t vocabulary = 40;  // words per label
  std::size_t min_words = 6;
  std::size_t max_words = 12;
  std::size_t projects = 10;
  std::uint64_t seed = 1;
};

/// Balanced six-label corpus. Each label owns a vocabulary (the SATD
/// vocabularies include a few marker words such as "todo" or "hack" so the
/// pattern baseline has something to find); tokens are drawn from the
/// example's own vocabulary except for a `noise` share drawn from the others.
std::vector<LabeledExample> synthetic_corpus(const SyntheticCorpusSpec& spec);

/// Projects of uneven size and skewed label mix, named p00, p01, ...
std::vector<LabeledExample> grouped_corpus(std::size_t projects, std::uint64_t seed);

// Random strings mixing ASCII, digits, punctuation, whitespace, accented
// Latin, Greek, Cyrillic, CJK, emoji, combining marks and control characters.
std::string random_text(Rng& rng, std::size_t max_code_points);

// Inserts extra spaces, tabs or newlines next to existing whitespace or at
// either end.
std::string add_whitespace_noise(Rng& rng, const std::string& text);

}  // namespace satd::testing
