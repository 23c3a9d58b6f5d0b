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

#include "satd/repo_analyzer.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "satd/error.hpp"
#include "satd/unicode.hpp"

namespace satd {

using nlohmann::json;

namespace {

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

void finish_totals(RepoReport& r) {
  r.total_satd = 0;
  for (Label l : kAllLabels)
    if (l != Label::NonSatd) r.total_satd += r.counts[index_of(l)];
  r.total_comments = r.total_satd + r.counts[index_of(Label::NonSatd)];
  r.pct_sci = percent(r.counts[index_of(Label::Scientific)], r.total_comments);
  r.pct_satd = percent(r.total_satd, r.total_comments);
}

}  // namespace

RepoReport RepoReport::from_counts(std::string name, std::string domain, const PerLabel<std::size_t>& counts) {
  RepoReport r;
  r.repo_name = std::move(name);
  r.domain_tag = std::move(domain);
  r.counts = counts;
  finish_totals(r);
  return r;
}

double RepoReport::sci_percent() const {
  if (!complete) throw Error(ErrorCode::IncompleteReport, repo_name + ": scan was partial");
  return pct_sci;
}

double RepoReport::satd_percent() const {
  if (!complete) throw Error(ErrorCode::IncompleteReport, repo_name + ": scan was partial");
  return pct_satd;
}

RepoReport analyze_repo(const std::filesystem::path& root, const Classifier& backend,
                        const AnalyzeConfig& config) {
  ScanResult scan = scan_repository(root, config.scan);
  RepoReport report;
  report.repo_name = scan.repo;
  report.domain_tag = config.domain_tag;
  report.files_scanned = scan.files_scanned;
  report.complete = scan.complete();
  report.empty = scan.files_scanned == 0 && scan.files_failed == 0;
  report.diagnostics = std::move(scan.diagnostics);

  std::vector<std::string> raw;
  raw.reserve(scan.comments.size());
  for (const auto& c : scan.comments) raw.push_back(c.raw_text);
  const int jobs = config.scan.jobs;
  auto normalized = jobs == 1 ? kernels::normalize_batch_serial(raw, config.stop_words)
                              : kernels::normalize_batch_parallel(raw, config.stop_words, jobs);

  std::vector<std::size_t> kept;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    if (!normalized[i]) {
      ++report.dropped_empty;
      continue;
    }
    kept.push_back(i);
    texts.push_back(std::move(*normalized[i]));
  }

  const auto predictions = classify(texts, backend);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const Classification& p = predictions[j];
    ++report.counts[index_of(p.label)];
    if (p.label == Label::NonSatd) continue;
    const SourceComment& c = scan.comments[kept[j]];
    report.instances.push_back({c.file_path, c.line_start, c.line_end, p.label, p.score(),
                                unicode::truncate(c.raw_text, kExcerptCodePoints)});
  }
  finish_totals(report);
  return report;
}

CohortReport cohort_report(std::vector<RepoReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::Empty, "cohort has no repositories");
  CohortReport cohort;
  for (const auto& r : reports) {
    for (std::size_t l = 0; l < kLabelCount; ++l) cohort.totals[l] += r.counts[l];
    cohort.total_satd += r.total_satd;
    cohort.total_comments += r.total_comments;
    cohort.avg_pct_sci += r.sci_percent();
    cohort.avg_pct_satd += r.satd_percent();
  }
  cohort.avg_pct_sci /= static_cast<double>(reports.size());
  cohort.avg_pct_satd /= static_cast<double>(reports.size());
  cohort.repos = std::move(reports);
  return cohort;
}

CohortComparison compare_cohorts(const CohortReport& a, const CohortReport& b) {
  if (a.repos.empty() || b.repos.empty()) throw Error(ErrorCode::Empty, "cohort has no repositories");
  if (b.avg_pct_sci == 0.0) throw Error(ErrorCode::DivisionByZero, "baseline %SCI is 0");
  if (b.avg_pct_satd == 0.0) throw Error(ErrorCode::DivisionByZero, "baseline %SATD is 0");
  CohortComparison out;
  out.ratio_sci = a.avg_pct_sci / b.avg_pct_sci;
  out.ratio_satd = a.avg_pct_satd / b.avg_pct_satd;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    if (a.total_comments == 0 || b.total_comments == 0 || b.totals[l] == 0) continue;
    const double ra = static_cast<double>(a.totals[l]) / static_cast<double>(a.total_comments);
    const double rb = static_cast<double>(b.totals[l]) / static_cast<double>(b.total_comments);
    out.label_rate_ratio[l] = ra / rb;
  }
  return out;
}

namespace {

// "YYYY-MM-DD" prefix of an ISO date or timestamp, validated.
std::string iso_date(const std::string& text, const std::string& field) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char tail = 0;
  const int got = std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail);
  const bool shape = text.size() >= 10 && text[4] == '-' && text[7] == '-' &&
                     (got == 3 ? text.size() == 10 : got == 4 && (tail == 'T' || tail == ' '));
  if (!shape || !std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}.ok()) {
    throw Error(ErrorCode::InvalidArgument, field + " is not an ISO date: " + text);
  }
  return text.substr(0, 10);
}

}  // namespace

void SelectionCriteria::validate() const {
  if (min_stars < 0 || min_contributors < 0) throw Error(ErrorCode::InvalidArgument, "negative threshold");
  iso_date(updated_after, "updated_after");
}

SelectionCriteria SelectionCriteria::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  SelectionCriteria c;
  try {
    const json j = json::parse(in);
    if (j.contains("min_stars")) c.min_stars = j["min_stars"].get<long>();
    if (j.contains("min_contributors")) c.min_contributors = j["min_contributors"].get<long>();
    if (j.contains("updated_after")) c.updated_after = j["updated_after"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
  c.validate();
  return c;
}

SelectionResult check_selection(const RepoMetadata& metadata, const SelectionCriteria& criteria) {
  criteria.validate();
  if (!metadata.stars) throw Error(ErrorCode::MissingField, "stars");
  if (!metadata.contributors) throw Error(ErrorCode::MissingField, "contributors");
  if (!metadata.updated) throw Error(ErrorCode::MissingField, "updated");
  SelectionResult r;
  if (*metadata.stars < criteria.min_stars) r.reasons.emplace_back("min_stars");
  if (*metadata.contributors < criteria.min_contributors) r.reasons.emplace_back("min_contributors");
  if (iso_date(*metadata.updated, "updated") < iso_date(criteria.updated_after, "updated_after")) {
    r.reasons.emplace_back("updated_after");
  }
  r.passed = r.reasons.empty();
  return r;
}

LocalMetadataFile::LocalMetadataFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    const json j = json::parse(in);
    for (const auto& [name, entry] : j.items()) {
      RepoMetadata m;
      if (entry.contains("stars")) m.stars = entry["stars"].get<long>();
      if (entry.contains("contributors")) m.contributors = entry["contributors"].get<long>();
      if (entry.contains("updated")) m.updated = entry["updated"].get<std::string>();
      entries_.emplace(name, std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
}

std::optional<RepoMetadata> LocalMetadataFile::lookup(const std::string& repo) const {
  const auto it = entries_.find(repo);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace satd
