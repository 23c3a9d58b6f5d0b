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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "satd/classifier.hpp"
#include "satd/comments.hpp"
#include "satd/label.hpp"
#include "satd/preprocess.hpp"
#include "satd/scan.hpp"

namespace satd {

inline constexpr std::size_t kExcerptCodePoints = 120;

struct SatdInstance {
  std::string file_path;
  std::size_t line_start = 0;
  std::size_t line_end = 0;
  Label label = Label::CodeDesign;  // never NonSatd
  double score = 0.0;
  std::string excerpt;  // first 120 code points of the raw comment
  bool operator==(const SatdInstance&) const = default;
};

struct RepoReport {
  std::string repo_name;
  std::string domain_tag;
  PerLabel<std::size_t> counts{};
  std::size_t total_satd = 0;
  std::size_t total_comments = 0;
  double pct_sci = 0.0;   // full precision; meaningful only when complete
  double pct_satd = 0.0;
  std::vector<SatdInstance> instances;
  bool complete = true;   // false when some files could not be read
  bool empty = false;     // no supported source files
  std::size_t files_scanned = 0;
  std::size_t dropped_empty = 0;  // comments that normalized to nothing
  std::vector<Diagnostic> diagnostics;

  // Totals and percentages from counts alone.
  static RepoReport from_counts(std::string name, std::string domain, const PerLabel<std::size_t>& counts);

  // Throw Error{IncompleteReport} for partial scans.
  double sci_percent() const;
  double satd_percent() const;
};

struct AnalyzeConfig {
  ScanConfig scan;
  StopWordPolicy stop_words;
  std::string domain_tag;
};

/// Scan, normalize, classify and tally one repository. Comments that
/// normalize to nothing are dropped and excluded from total_comments.
RepoReport analyze_repo(const std::filesystem::path& root, const Classifier& backend,
                        const AnalyzeConfig& config = {});

struct CohortReport {
  std::vector<RepoReport> repos;
  PerLabel<std::size_t> totals{};
  std::size_t total_satd = 0;
  std::size_t total_comments = 0;
  double avg_pct_sci = 0.0;   // unweighted mean over repos
  double avg_pct_satd = 0.0;
};

// Throws Error{Empty} or Error{IncompleteReport}.
CohortReport cohort_report(std::vector<RepoReport> reports);

struct CohortComparison {
  double ratio_sci = 0.0;
  double ratio_satd = 0.0;
  // (a.totals[l] / a.total_comments) / (b.totals[l] / b.total_comments);
  // nullopt where the b rate is zero.
  PerLabel<std::optional<double>> label_rate_ratio{};
};

// Throws Error{DivisionByZero} when b's average percentages are 0.
CohortComparison compare_cohorts(const CohortReport& a, const CohortReport& b);

struct SelectionCriteria {
  long min_stars = 40;
  long min_contributors = 15;
  std::string updated_after = "2023-01-01";  // ISO date, inclusive

  // Throws Error{InvalidArgument}.
  void validate() const;
  // Keys min_stars, min_contributors, updated_after; all optional.
  static SelectionCriteria from_file(const std::filesystem::path& path);
};

struct RepoMetadata {
  std::optional<long> stars;
  std::optional<long> contributors;
  std::optional<std::string> updated;  // ISO date or timestamp
};

struct SelectionResult {
  bool passed = false;
  std::vector<std::string> reasons;  // criterion names that failed
};

// Throws Error{MissingField} naming the absent field.
SelectionResult check_selection(const RepoMetadata& metadata, const SelectionCriteria& criteria);

class MetadataSource {
 public:
  virtual ~MetadataSource() = default;
  virtual std::optional<RepoMetadata> lookup(const std::string& repo) const = 0;
};

// {"<repo>": {"stars": 48, "contributors": 22, "updated": "2024-01-01"}, ...}
class LocalMetadataFile final : public MetadataSource {
 public:
  explicit LocalMetadataFile(const std::filesystem::path& path);
  std::optional<RepoMetadata> lookup(const std::string& repo) const override;

 private:
  std::map<std::string, RepoMetadata> entries_;
};

// Renderers.
std::string render_json(const RepoReport& report);
std::string render_json(const CohortReport& cohort);
std::string render_json(const CohortComparison& comparison);
std::string render_csv(std::span<const RepoReport> reports);
// Columns Repo Name, Repo Domain, Total SATD, Non SATD, DOC, REQ, TES, C/D,
// SCI, %SCI, %SATD. Cohorts get a trailing totals row with averaged
// percentages marked '*'.
std::string render_markdown(std::span<const RepoReport> reports);
std::string render_markdown(const CohortReport& cohort);
std::string render_markdown(const CohortComparison& comparison);
// [{file, line_start, line_end, label, score}, ...]
std::string render_sarif(const RepoReport& report);

}  // namespace satd
