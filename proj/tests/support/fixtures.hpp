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

#include "satd/repo_analyzer.hpp"

namespace satd::testing {

std::filesystem::path fixture_path(const std::string& relative);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

// One transcribed row of the published repository tables.
struct TableRow {
  std::string repo;
  std::string domain;
  std::size_t total_satd = 0;
  PerLabel<std::size_t> counts{};
  double published_pct_sci = 0.0;
  double published_pct_satd = 0.0;
};

std::vector<TableRow> load_table(const std::string& name);  // "scientific" or "general"

struct PublishedTotals {
  std::size_t total_satd = 0;
  PerLabel<std::size_t> counts{};
  double avg_pct_sci = 0.0;
  double avg_pct_satd = 0.0;
};

PublishedTotals published_totals(const std::string& cohort);

std::vector<RepoReport> reports_from(const std::vector<TableRow>& rows);

}  // namespace satd::testing
