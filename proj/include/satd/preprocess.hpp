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

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace satd {

struct StopWordPolicy {
  enum class Mode { None, CustomList };
  Mode mode = Mode::None;
  std::set<std::string> words;  // lowercase tokens, used with CustomList

  static StopWordPolicy none() { return {}; }
  static StopWordPolicy custom(std::set<std::string> words) {
    return {Mode::CustomList, std::move(words)};
  }
  // One token per line; blank lines and '#' lines ignored. Tokens are
  // normalized like comment text. Throws Error{Io}.
  static StopWordPolicy from_file(const std::string& path);
};

/// Normalizes comment text for classification:
///   1. line breaks become spaces;
///   2. everything that is not Unicode-alphabetic, a space, or one of " ' !
///      becomes a space;
///   3. letters are case-folded to lowercase;
///   4. whitespace runs collapse to one space and the ends are trimmed;
///   5. with a CustomList policy, listed tokens are dropped.
/// Returns nullopt when nothing survives.
std::optional<std::string> normalize(std::string_view raw, const StopWordPolicy& policy = {});

// True iff `text` satisfies the normalized-text character set and spacing.
bool is_normalized(std::string_view text);

struct TokenStats {
  double mean_words = 0.0;
  double stddev_words = 0.0;  // population standard deviation
};

// Throws Error{EmptyCorpus}.
TokenStats token_stats(std::span<const std::string> corpus);

namespace kernels {
std::vector<std::optional<std::string>> normalize_batch_serial(std::span<const std::string> raw,
                                                               const StopWordPolicy& policy);
std::vector<std::optional<std::string>> normalize_batch_parallel(std::span<const std::string> raw,
                                                                 const StopWordPolicy& policy, int jobs);
}  // namespace kernels

}  // namespace satd
