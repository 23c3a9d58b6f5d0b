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

#include "satd/scan.hpp"

#include <fnmatch.h>
#include <omp.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

namespace satd {

namespace fs = std::filesystem;

namespace {

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool glob_ignored(const std::vector<std::string>& globs, const std::string& relative) {
  return std::any_of(globs.begin(), globs.end(), [&](const std::string& glob) {
    return ::fnmatch(glob.c_str(), relative.c_str(), 0) == 0;
  });
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(buffer).str();
}

ExtractResult lex_one(const SourceFile& file, const std::string& repo) {
  auto text = read_file(file.absolute);
  if (!text) {
    ExtractResult failed;
    failed.diagnostics.push_back(Diagnostic{ErrorCode::Io, file.relative, 0, "cannot read file"});
    return failed;
  }
  return extract_comments(*text, file.language, file.relative, repo);
}

ScanResult reduce(std::vector<ExtractResult>& per_file, const std::string& repo) {
  ScanResult result;
  result.repo = repo;
  result.files_scanned = per_file.size();
  for (auto& r : per_file) {
    const bool failed = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                                    [](const Diagnostic& d) { return d.code == ErrorCode::Io; });
    if (failed) ++result.files_failed;
    std::move(r.comments.begin(), r.comments.end(), std::back_inserter(result.comments));
    std::move(r.diagnostics.begin(), r.diagnostics.end(), std::back_inserter(result.diagnostics));
  }
  return result;
}

}  // namespace

int resolve_jobs(int jobs) noexcept { return jobs > 0 ? jobs : std::max(1, omp_get_max_threads()); }

std::vector<SourceFile> list_source_files(const fs::path& root, const ScanConfig& config) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::Io, "not a readable directory: " + root.string());
  }
  std::vector<SourceFile> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot open " + root.string() + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    const fs::directory_entry& entry = *it;
    const std::string name = entry.path().filename().string();
    const std::string relative = fs::relative(entry.path(), root, ec).generic_string();
    if (entry.is_directory(ec)) {
      if (contains(config.ignore_dirs, name) || contains(config.vendored_dirs, name) ||
          glob_ignored(config.ignore_globs, relative)) {
        it.disable_recursion_pending();
      }
      continue;
    }
    // Dangling symlinks stay in the list so the read failure is reported.
    if (!entry.is_regular_file(ec) && !entry.is_symlink(ec)) continue;
    if (glob_ignored(config.ignore_globs, relative)) continue;
    auto language = detect_language(entry.path());
    if (!language) continue;
    if (config.languages && !config.languages->contains(language->id)) continue;
    files.push_back(SourceFile{entry.path(), relative, std::move(*language)});
  }
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.relative < b.relative; });
  return files;
}

namespace kernels {

ScanResult lex_files_serial(const std::vector<SourceFile>& files, const std::string& repo) {
  std::vector<ExtractResult> per_file;
  per_file.reserve(files.size());
  for (const auto& file : files) per_file.push_back(lex_one(file, repo));
  return reduce(per_file, repo);
}

ScanResult lex_files_parallel(const std::vector<SourceFile>& files, const std::string& repo, int jobs) {
  std::vector<ExtractResult> per_file(files.size());
  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(jobs))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    per_file[static_cast<std::size_t>(i)] = lex_one(files[static_cast<std::size_t>(i)], repo);
  }
  return reduce(per_file, repo);
}

}  // namespace kernels

ScanResult scan_repository(const fs::path& root, const ScanConfig& config) {
  std::string repo = config.repo_name;
  if (repo.empty()) {
    std::error_code ec;
    repo = fs::weakly_canonical(root, ec).filename().string();
    if (repo.empty()) repo = root.filename().string();
  }
  const auto files = list_source_files(root, config);
  const int jobs = resolve_jobs(config.jobs);
  return jobs == 1 ? kernels::lex_files_serial(files, repo)
                   : kernels::lex_files_parallel(files, repo, jobs);
}

}  // namespace satd
