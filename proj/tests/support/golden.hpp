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

#include <filesystem>
#include <string>
#include <vector>

namespace satd::testing {

struct GoldenCase {
  std::filesystem::path source;    // e.g. golden/c/block_forms.c
  std::filesystem::path expected;  // source + ".expected.json"
  std::string language;            // directory name
};

std::vector<GoldenCase> golden_cases();

// Empty when the extractor output matches the hand-lexed expectation;
// otherwise one line per difference.
std::vector<std::string> golden_mismatches(const GoldenCase& c);

}  // namespace satd::testing
