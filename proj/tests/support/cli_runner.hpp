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

#include "satd/corpus.hpp"

namespace satd::testing {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `binary args...` through the shell with each argument single-quoted;
// stdout and stderr are captured through temporary files.
CliResult run_cli(const std::string& binary, const std::vector<std::string>& args);

// Writes examples as a project,text,label CSV.
void write_dataset_csv(const std::filesystem::path& path, const std::vector<LabeledExample>& examples);

}  // namespace satd::testing
