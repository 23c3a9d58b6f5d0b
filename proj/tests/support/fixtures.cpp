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

#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace satd::testing {

std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(SATD_FIXTURE_DIR) / relative;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("satd-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

namespace {

// The table fixtures hold no quoted commas except in quoted domain cells.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else cell += c;
  }
  cells.push_back(cell);
  return cells;
}

std::vector<std::vector<std::string>> read_rows(const std::string& file) {
  std::istringstream in(read_file(fixture_path("tables/" + file)));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(split_csv_line(line));
  return rows;
}

}  // namespace

std::vector<TableRow> load_table(const std::string& name) {
  std::vector<TableRow> out;
  for (const auto& c : read_rows(name + "_repos.csv")) {
    TableRow r;
    r.repo = c.at(0);
    r.domain = c.at(1);
    r.total_satd = std::stoul(c.at(2));
    r.counts[index_of(Label::NonSatd)] = std::stoul(c.at(3));
    r.counts[index_of(Label::Documentation)] = std::stoul(c.at(4));
    r.counts[index_of(Label::Requirement)] = std::stoul(c.at(5));
    r.counts[index_of(Label::Test)] = std::stoul(c.at(6));
    r.counts[index_of(Label::CodeDesign)] = std::stoul(c.at(7));
    r.counts[index_of(Label::Scientific)] = std::stoul(c.at(8));
    r.published_pct_sci = std::stod(c.at(9));
    r.published_pct_satd = std::stod(c.at(10));
    out.push_back(r);
  }
  return out;
}

PublishedTotals published_totals(const std::string& cohort) {
  for (const auto& c : read_rows("published_totals.csv")) {
    if (c.at(0) != cohort) continue;
    PublishedTotals t;
    t.total_satd = std::stoul(c.at(1));
    t.counts[index_of(Label::NonSatd)] = std::stoul(c.at(2));
    t.counts[index_of(Label::Documentation)] = std::stoul(c.at(3));
    t.counts[index_of(Label::Requirement)] = std::stoul(c.at(4));
    t.counts[index_of(Label::Test)] = std::stoul(c.at(5));
    t.counts[index_of(Label::CodeDesign)] = std::stoul(c.at(6));
    t.counts[index_of(Label::Scientific)] = std::stoul(c.at(7));
    t.avg_pct_sci = std::stod(c.at(8));
    t.avg_pct_satd = std::stod(c.at(9));
    return t;
  }
  throw std::runtime_error("no published totals for " + cohort);
}

std::vector<RepoReport> reports_from(const std::vector<TableRow>& rows) {
  std::vector<RepoReport> out;
  for (const auto& r : rows) out.push_back(RepoReport::from_counts(r.repo, r.domain, r.counts));
  return out;
}

}  // namespace satd::testing
