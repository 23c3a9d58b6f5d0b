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

#include <gtest/gtest.h>

#include <json.hpp>

#include "cli_runner.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

using satd::testing::fixture_path;
using satd::testing::run_cli;
using satd::testing::TempDir;

namespace {

satd::testing::CliResult satd_cli(const std::vector<std::string>& args) { return run_cli(SATD_CLI_PATH, args); }

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

std::filesystem::path toy_dataset(const TempDir& dir) {
  satd::testing::SyntheticCorpusSpec spec;
  spec.per_label = 30;
  spec.projects = 6;
  const auto path = dir.path() / "toy.csv";
  satd::testing::write_dataset_csv(path, satd::testing::synthetic_corpus(spec));
  return path;
}

}  // namespace

TEST(CliExtract, TinyRepo) {
  const auto r = satd_cli({"extract", fixture_path("tiny-repo").string()});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 7u);
  const auto first = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(first.at("file"), "main.go");
}

TEST(CliExtract, LanguageFilter) {
  const auto r = satd_cli({"extract", "--langs", "go", fixture_path("tiny-repo").string()});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 1u);
}

TEST(CliExtract, MissingRootIsFatal) {
  const auto r = satd_cli({"extract", "/nonexistent/repo"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("Io"), std::string::npos) << r.err;
}

TEST(CliExtract, DiagnosticsExitTwo) {
  TempDir dir("clidiag");
  satd::testing::write_file(dir.path() / "a.c", "int x; /* never closed\n");
  const auto r = satd_cli({"extract", dir.path().string()});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("UnterminatedBlockComment"), std::string::npos) << r.err;
}

TEST(CliUsage, BadArgumentsExitOne) {
  EXPECT_EQ(satd_cli({"extract"}).exit_code, 1);
  EXPECT_EQ(satd_cli({"--format", "xml", "extract", "."}).exit_code, 1);
  EXPECT_EQ(satd_cli({"--help"}).exit_code, 0);
}

TEST(CliTrain, TrainsAndSavesModel) {
  TempDir dir("clitrain");
  const auto data = toy_dataset(dir);
  const auto model = dir.path() / "model.json";
  const auto r = satd_cli({"--seed", "3", "train", "--dataset", data.string(), "--model-out", model.string(),
                           "--min-count", "1", "--epochs", "4", "--lr", "0.05"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(model));
  EXPECT_NE(r.err.find("selected lr=0.05"), std::string::npos) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report.at("mode"), "intra");
  EXPECT_GT(report.at("test").at("weighted_f1").get<double>(), 0.5);

  const auto again = satd_cli({"--seed", "3", "train", "--dataset", data.string(), "--model-out",
                               (dir.path() / "model2.json").string(), "--min-count", "1", "--epochs", "4", "--lr", "0.05"});
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(satd::testing::read_file(model), satd::testing::read_file(dir.path() / "model2.json"));
}

TEST(CliTrain, AnalyzeWithTrainedModel) {
  TempDir dir("climodel");
  const auto data = toy_dataset(dir);
  const auto model = dir.path() / "model.json";
  ASSERT_EQ(satd_cli({"train", "--dataset", data.string(), "--model-out", model.string(), "--epochs", "2"}).exit_code, 0);
  const auto r = satd_cli({"--backend", "ngram:" + model.string(), "analyze", fixture_path("tiny-repo").string()});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("total_comments"), 7);
}

TEST(CliEvaluate, CrossMode) {
  TempDir dir("clieval");
  const auto data = toy_dataset(dir);
  const auto md = dir.path() / "table.md";
  const auto r = satd_cli({"evaluate", "--dataset", data.string(), "--mode", "cross", "--k", "3", "--epochs", "2",
                           "--min-count", "1", "--md", md.string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("k"), 3);
  EXPECT_EQ(j.at("per_fold").size(), 3u);
  EXPECT_EQ(satd::testing::read_file(md).rfind("| Model | REQ F1 |", 0), 0u);
}

TEST(CliEvaluate, PatternBackendAndTooManyFolds) {
  TempDir dir("clifolds");
  const auto data = toy_dataset(dir);
  const auto ok = satd_cli({"--backend", "patterns", "evaluate", "--dataset", data.string(), "--mode", "cross", "--k", "2"});
  EXPECT_EQ(ok.exit_code, 0) << ok.err;
  const auto bad = satd_cli({"evaluate", "--dataset", data.string(), "--mode", "cross", "--k", "30"});
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.err.find("TooFewGroups"), std::string::npos) << bad.err;
}

TEST(CliEvaluate, DatasetFromEnvironmentIsRequired) {
  const auto r = satd_cli({"evaluate", "--mode", "intra"});
  EXPECT_EQ(r.exit_code, 1);
}

TEST(CliAnalyze, SingleRepoJson) {
  const auto r = satd_cli({"analyze", "--domain", "Physics", fixture_path("tiny-repo").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("domain_tag"), "Physics");
  EXPECT_EQ(j.at("total_satd"), 4);
  EXPECT_EQ(j.at("instances").size(), 4u);
}

TEST(CliAnalyze, MarkdownColumnOrder) {
  const auto r = satd_cli({"analyze", "--render", "md", fixture_path("tiny-repo").string(),
                           fixture_path("other-repo").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("| Repo Name | Repo Domain | Total SATD | Non SATD | DOC | REQ | TES | C/D | SCI | %SCI | %SATD |", 0), 0u);
  EXPECT_NE(r.out.find("| tiny-repo |  | 4 | 3 | 0 | 1 | 0 | 2 | 1 | 14.29 | 57.14 |"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("| Total |"), std::string::npos);
}

TEST(CliAnalyze, Compare) {
  const auto r = satd_cli({"analyze", "--compare", fixture_path("tiny-repo").string(),
                           fixture_path("other-repo").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("ratio_sci").get<double>(), (100.0 / 7.0) / 25.0, 1e-9);
  EXPECT_NEAR(j.at("ratio_satd").get<double>(), (400.0 / 7.0) / 50.0, 1e-9);
}

TEST(CliAnalyze, CriteriaWarnOrEnforce) {
  TempDir dir("clicrit");
  satd::testing::write_file(dir.path() / "criteria.json", R"({"min_stars": 40})");
  satd::testing::write_file(dir.path() / "meta.json",
                            R"({"tiny-repo": {"stars": 39, "contributors": 22, "updated": "2024-01-01"},
                                "other-repo": {"stars": 400, "contributors": 22, "updated": "2024-01-01"}})");
  const std::vector<std::string> base = {"analyze", "--criteria", (dir.path() / "criteria.json").string(),
                                         "--metadata", (dir.path() / "meta.json").string(),
                                         fixture_path("tiny-repo").string()};
  const auto warn = satd_cli(base);
  EXPECT_EQ(warn.exit_code, 2);
  EXPECT_NE(warn.err.find("min_stars"), std::string::npos) << warn.err;
  EXPECT_EQ(nlohmann::json::parse(warn.out).at("total_comments"), 7);

  auto enforce_args = base;
  enforce_args.insert(enforce_args.begin() + 1, "--enforce-criteria");
  enforce_args.push_back(fixture_path("other-repo").string());
  const auto enforced = satd_cli(enforce_args);
  EXPECT_EQ(enforced.exit_code, 2);
  EXPECT_EQ(nlohmann::json::parse(enforced.out).at("repo_name"), "other-repo");

  const auto no_meta = satd_cli({"analyze", "--criteria", (dir.path() / "criteria.json").string(),
                                 fixture_path("tiny-repo").string()});
  EXPECT_EQ(no_meta.exit_code, 1);
}

TEST(CliAnalyze, CsvAndSarif) {
  TempDir dir("clisarif");
  const auto sarif = dir.path() / "out.sarif.json";
  const auto r = satd_cli({"--format", "csv", "analyze", "--sarif", sarif.string(), fixture_path("other-repo").string()});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 2u);
  EXPECT_EQ(nlohmann::json::parse(satd::testing::read_file(sarif)).size(), 2u);
}

TEST(CliAnalyze, JobsDoNotChangeOutput) {
  const auto one = satd_cli({"--jobs", "1", "analyze", fixture_path("tiny-repo").string()});
  const auto four = satd_cli({"--jobs", "4", "analyze", fixture_path("tiny-repo").string()});
  EXPECT_EQ(one.exit_code, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST(CliServeCheck, DeadEndpoint) {
  const auto r = satd_cli({"serve-check", "http://127.0.0.1:1"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("Unreachable"), std::string::npos) << r.err;
}
