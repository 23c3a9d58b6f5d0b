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

#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "satd/repo_analyzer.hpp"

namespace satd {

using nlohmann::ordered_json;

namespace {

// Markdown column order for the count cells.
constexpr std::array kTableLabels = {Label::Documentation, Label::Requirement, Label::Test, Label::CodeDesign,
                                     Label::Scientific};

std::string grouped(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string pct_cell(const RepoReport& r, double value) {
  return r.complete ? fmt::format("{:.2f}", value) : "n/a";
}

ordered_json counts_json(const PerLabel<std::size_t>& counts) {
  ordered_json j = ordered_json::object();
  for (Label l : kAllLabels) j[std::string(wire_name(l))] = counts[index_of(l)];
  return j;
}

ordered_json report_json(const RepoReport& r, bool with_instances) {
  ordered_json j;
  j["repo_name"] = r.repo_name;
  j["domain_tag"] = r.domain_tag;
  j["counts"] = counts_json(r.counts);
  j["total_satd"] = r.total_satd;
  j["total_comments"] = r.total_comments;
  if (r.complete) {
    j["pct_sci"] = r.pct_sci;
    j["pct_satd"] = r.pct_satd;
  } else {
    j["pct_sci"] = nullptr;
    j["pct_satd"] = nullptr;
  }
  j["complete"] = r.complete;
  j["empty"] = r.empty;
  j["files_scanned"] = r.files_scanned;
  j["dropped_empty"] = r.dropped_empty;
  ordered_json diags = ordered_json::array();
  for (const auto& d : r.diagnostics) {
    diags.push_back({{"code", error_code_name(d.code)}, {"file", d.file_path}, {"line", d.line}, {"message", d.message}});
  }
  j["diagnostics"] = diags;
  if (with_instances) {
    ordered_json inst = ordered_json::array();
    for (const auto& i : r.instances) {
      inst.push_back({{"file", i.file_path},
                      {"line_start", i.line_start},
                      {"line_end", i.line_end},
                      {"label", wire_name(i.label)},
                      {"score", i.score},
                      {"excerpt", i.excerpt}});
    }
    j["instances"] = inst;
  }
  return j;
}

void markdown_header(std::ostringstream& out) {
  out << "| Repo Name | Repo Domain | Total SATD | Non SATD | DOC | REQ | TES | C/D | SCI | %SCI | %SATD |\n"
      << "|---|---|---|---|---|---|---|---|---|---|---|\n";
}

void markdown_row(std::ostringstream& out, const RepoReport& r) {
  out << "| " << r.repo_name << " | " << r.domain_tag << " | " << grouped(r.total_satd) << " | "
      << grouped(r.counts[index_of(Label::NonSatd)]) << " |";
  for (Label l : kTableLabels) out << ' ' << grouped(r.counts[index_of(l)]) << " |";
  out << ' ' << pct_cell(r, r.pct_sci) << " | " << pct_cell(r, r.pct_satd) << " |\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string render_json(const RepoReport& report) { return report_json(report, true).dump(2) + "\n"; }

std::string render_json(const CohortReport& cohort) {
  ordered_json j;
  ordered_json repos = ordered_json::array();
  for (const auto& r : cohort.repos) repos.push_back(report_json(r, false));
  j["repos"] = repos;
  j["totals"] = counts_json(cohort.totals);
  j["total_satd"] = cohort.total_satd;
  j["total_comments"] = cohort.total_comments;
  j["avg_pct_sci"] = cohort.avg_pct_sci;
  j["avg_pct_satd"] = cohort.avg_pct_satd;
  return j.dump(2) + "\n";
}

std::string render_json(const CohortComparison& comparison) {
  ordered_json j;
  j["ratio_sci"] = comparison.ratio_sci;
  j["ratio_satd"] = comparison.ratio_satd;
  ordered_json rates = ordered_json::object();
  for (Label l : kAllLabels) {
    const auto& v = comparison.label_rate_ratio[index_of(l)];
    rates[std::string(wire_name(l))] = v ? ordered_json(*v) : ordered_json(nullptr);
  }
  j["label_rate_ratio"] = rates;
  return j.dump(2) + "\n";
}

std::string render_csv(std::span<const RepoReport> reports) {
  std::ostringstream out;
  out << "repo_name,domain_tag";
  for (Label l : kAllLabels) out << ',' << wire_name(l);
  out << ",total_satd,total_comments,pct_sci,pct_satd,complete\n";
  for (const auto& r : reports) {
    out << csv_field(r.repo_name) << ',' << csv_field(r.domain_tag);
    for (Label l : kAllLabels) out << ',' << r.counts[index_of(l)];
    out << ',' << r.total_satd << ',' << r.total_comments << ',';
    if (r.complete) out << fmt::format("{:.6f},{:.6f}", r.pct_sci, r.pct_satd);
    else out << ',';
    out << ',' << (r.complete ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string render_markdown(std::span<const RepoReport> reports) {
  std::ostringstream out;
  markdown_header(out);
  for (const auto& r : reports) markdown_row(out, r);
  return out.str();
}

std::string render_markdown(const CohortReport& cohort) {
  std::ostringstream out;
  markdown_header(out);
  for (const auto& r : cohort.repos) markdown_row(out, r);
  out << "| Total |  | " << grouped(cohort.total_satd) << " | "
      << grouped(cohort.totals[index_of(Label::NonSatd)]) << " |";
  for (Label l : kTableLabels) out << ' ' << grouped(cohort.totals[index_of(l)]) << " |";
  out << fmt::format(" {:.2f}* | {:.2f}* |\n", cohort.avg_pct_sci, cohort.avg_pct_satd);
  out << "\n\\* column average\n";
  return out.str();
}

std::string render_markdown(const CohortComparison& comparison) {
  std::ostringstream out;
  out << "| Measure | Ratio |\n|---|---|\n";
  out << fmt::format("| %SCI | {:.2f}x |\n| %SATD | {:.2f}x |\n", comparison.ratio_sci, comparison.ratio_satd);
  for (Label l : kAllLabels) {
    const auto& v = comparison.label_rate_ratio[index_of(l)];
    out << "| " << short_name(l) << " rate | " << (v ? fmt::format("{:.2f}x", *v) : std::string("n/a")) << " |\n";
  }
  return out.str();
}

std::string render_sarif(const RepoReport& report) {
  ordered_json records = ordered_json::array();
  for (const auto& i : report.instances) {
    records.push_back({{"file", i.file_path},
                       {"line_start", i.line_start},
                       {"line_end", i.line_end},
                       {"label", wire_name(i.label)},
                       {"score", i.score}});
  }
  return records.dump(2) + "\n";
}

}  // namespace satd
