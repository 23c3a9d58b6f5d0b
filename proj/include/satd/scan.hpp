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
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "satd/comments.hpp"

namespace satd {

struct ScanConfig {
  // Empty means "use the root directory's name".
  std::string repo_name;
  // Directory names pruned anywhere in the tree.
  std::vector<std::string> ignore_dirs = {".git", ".hg", ".svn", ".bzr", "CVS"};
  std::vector<std::string> vendored_dirs = {"third_party", "thirdparty", "vendor", "node_modules"};
  // fnmatch(3) patterns matched against the repo-relative path.
  std::vector<std::string> ignore_globs;
  // Restrict to these languages when set.
  std::optional<std::set<LanguageId>> languages;
  // Worker threads for lexing; 0 picks the OpenMP default.
  int jobs = 0;
};

struct SourceFile {
  std::filesystem::path absolute;
  std::string relative;  // '/' separated
  SourceLanguage language;
};

struct ScanResult {
  std::string repo;
  std::vector<SourceComment> comments;  // sorted by (file_path, line_start)
  std::vector<Diagnostic> diagnostics;
  std::size_t files_scanned = 0;
  std::size_t files_failed = 0;  // unreadable files

  bool complete() const noexcept { return files_failed == 0; }
};

// Supported files under root in lexicographic relative-path order.
// Throws Error{Io} when root is not a readable directory.
std::vector<SourceFile> list_source_files(const std::filesystem::path& root, const ScanConfig& config);

/// Walks `root` and extracts the comments of every supported file. Files are
/// lexed concurrently (config.jobs); the result is identical for any job
/// count. Unreadable files produce a diagnostic and are skipped.
ScanResult scan_repository(const std::filesystem::path& root, const ScanConfig& config = {});

namespace kernels {
// Reference and OpenMP implementations of the per-file lexing loop.
ScanResult lex_files_serial(const std::vector<SourceFile>& files, const std::string& repo);
ScanResult lex_files_parallel(const std::vector<SourceFile>& files, const std::string& repo, int jobs);
}  // namespace kernels

int resolve_jobs(int jobs) noexcept;

}  // namespace satd
