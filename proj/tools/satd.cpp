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

// satd: command-line front end for comment extraction, training,
// evaluation and repository reports.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "satd/classifier.hpp"
#include "satd/corpus.hpp"
#include "satd/error.hpp"
#include "satd/evaluation.hpp"
#include "satd/inference_client.hpp"
#include "satd/ngram.hpp"
#include "satd/paraphrase.hpp"
#include "satd/repo_analyzer.hpp"
#include "satd/scan.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitDiagnostics = 2;

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "json";
  int verbosity = 0;
  int jobs = 0;
  std::string backend;
  std::string stop_words = "none";
  std::string output;
};

void log(const Globals& g, int level, const std::string& message) {
  if (g.verbosity >= level) std::cerr << message << '\n';
}

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw satd::Error(satd::ErrorCode::Io, "cannot write " + g.output);
  out << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw satd::Error(satd::ErrorCode::Io, "cannot write " + path);
  out << text;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

satd::StopWordPolicy stop_word_policy(const std::string& spec) {
  if (spec == "none") return satd::StopWordPolicy::none();
  if (spec.rfind("file:", 0) == 0) return satd::StopWordPolicy::from_file(spec.substr(5));
  throw satd::Error(satd::ErrorCode::InvalidArgument, "--stop-words expects none or file:PATH, got " + spec);
}

satd::InferenceEndpoint remote_endpoint(const std::string& url) {
  satd::InferenceEndpoint e;
  e.base_url = url.empty() ? env_or("SATD_ENDPOINT", e.base_url) : url;
  return e;
}

// ngram:PATH, patterns[:PATH], remote[:URL].
std::shared_ptr<const satd::Classifier> fixed_backend(const Globals& g, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "ngram") {
    if (arg.empty()) throw satd::Error(satd::ErrorCode::InvalidArgument, "ngram backend needs a model path");
    auto model = std::make_shared<satd::NgramModel>(satd::NgramModel::load(arg));
    model->set_jobs(g.jobs);
    return model;
  }
  if (kind == "patterns") {
    return std::make_shared<satd::PatternRuleSet>(arg.empty() || arg == "default"
                                                      ? satd::PatternRuleSet::defaults()
                                                      : satd::PatternRuleSet::from_file(arg));
  }
  if (kind == "remote") return std::make_shared<satd::RemoteClassifier>(remote_endpoint(arg));
  throw satd::Error(satd::ErrorCode::InvalidArgument, "unknown backend " + spec);
}

std::set<satd::LanguageId> parse_languages(const std::vector<std::string>& names) {
  std::set<satd::LanguageId> out;
  for (const auto& n : names) {
    const auto id = satd::parse_language_name(n);
    if (!id) throw satd::Error(satd::ErrorCode::InvalidArgument, "unknown language " + n);
    out.insert(*id);
  }
  return out;
}

void print_diagnostics(const std::vector<satd::Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    std::cerr << fmt::format("warning: {}:{}: {}: {}\n", d.file_path, d.line, satd::error_code_name(d.code),
                             d.message);
  }
}

std::vector<satd::LabeledExample> load_datasets(const Globals& g, std::vector<std::string> paths,
                                                bool& diagnostics) {
  if (paths.empty()) {
    std::stringstream env(env_or("SATD_DATASET", ""));
    for (std::string p; std::getline(env, p, ':');)
      if (!p.empty()) paths.push_back(p);
  }
  if (paths.empty()) throw satd::Error(satd::ErrorCode::InvalidArgument, "no --dataset given (or SATD_DATASET)");
  std::vector<std::vector<satd::LabeledExample>> sets;
  for (const auto& p : paths) {
    auto loaded = satd::load_dataset(p);
    for (const auto& d : loaded.diagnostics) std::cerr << "warning: " << p << ": " << d << '\n';
    diagnostics = diagnostics || !loaded.diagnostics.empty();
    log(g, 1, fmt::format("{}: {} examples", p, loaded.examples.size()));
    sets.push_back(std::move(loaded.examples));
  }
  auto merged = satd::merge(sets);
  log(g, 1, fmt::format("merged: {} examples", merged.summary.total));
  return std::move(merged.examples);
}

// ---- extract ---------------------------------------------------------------

struct ExtractArgs {
  std::string path;
  std::vector<std::string> langs;
};

int run_extract(const Globals& g, const ExtractArgs& a) {
  satd::ScanConfig config;
  config.jobs = g.jobs;
  if (!a.langs.empty()) config.languages = parse_languages(a.langs);
  const auto scan = satd::scan_repository(a.path, config);
  std::string out;
  for (const auto& c : scan.comments) out += satd::to_jsonl(c) + "\n";
  emit(g, out);
  print_diagnostics(scan.diagnostics);
  log(g, 1, fmt::format("{} files, {} comments", scan.files_scanned, scan.comments.size()));
  return scan.diagnostics.empty() ? kExitOk : kExitDiagnostics;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> datasets;
  bool grid = false;
  double lr = 0.01;
  double wd = 0.01;
  std::size_t epochs = 10;
  std::size_t batch_size = 32;
  std::size_t min_count = 2;
  std::string model_out = "model.json";
  std::string report_out;
  std::string augment_label;
  std::string paraphrase_endpoint;
};

satd::TrainableBackend trainable(const Globals& g, const TrainArgs& a) {
  satd::TrainableBackend t;
  t.config.learning_rate = a.lr;
  t.config.weight_decay = a.wd;
  t.config.max_epochs = a.epochs;
  t.config.batch_size = a.batch_size;
  t.config.min_count = a.min_count;
  t.config.seed = g.seed;
  t.grid = a.grid;
  if (!a.augment_label.empty()) {
    const satd::Label target = satd::decode_label(a.augment_label);
    const std::string endpoint = a.paraphrase_endpoint;
    t.augment_train = [target, endpoint, &g](std::vector<satd::LabeledExample> train) {
      std::unique_ptr<satd::ParaphraseProvider> provider;
      if (endpoint.empty()) {
        provider = std::make_unique<satd::StubParaphraseProvider>();
      } else {
        satd::ChatEndpoint chat;
        chat.base_url = endpoint;
        chat.api_key = env_or("SATD_PARAPHRASE_KEY", "");
        provider = std::make_unique<satd::HttpChatParaphraseProvider>(chat);
      }
      auto result = satd::augment_minority(train, target, *provider);
      for (const auto& d : result.diagnostics) log(g, 1, "augment: " + d);
      log(g, 1, fmt::format("augment: +{} {} examples, {} dropped", result.added,
                            satd::wire_name(target), result.dropped));
      return std::move(result.examples);
    };
  }
  return t;
}

int run_train(const Globals& g, const TrainArgs& a) {
  bool diagnostics = false;
  const auto examples = load_datasets(g, a.datasets, diagnostics);
  satd::SplitSpec spec;
  spec.seed = g.seed;
  const auto result = satd::run_intra_project(examples, spec, trainable(g, a));
  for (const auto& run : result.grid_runs) {
    log(g, 1, fmt::format("lr={:g} wd={:g} validation weighted F1={:.4f}", run.learning_rate, run.weight_decay,
                          run.validation_weighted_f1));
  }
  std::cerr << fmt::format("selected lr={:g} wd={:g}; test weighted F1={:.4f}\n", result.selected->learning_rate,
                           result.selected->weight_decay, result.test.weighted_f1);
  result.model->save(a.model_out);
  const std::string report = satd::to_json(result) + "\n";
  if (a.report_out.empty()) emit(g, report);
  else write_file(a.report_out, report);
  return diagnostics ? kExitDiagnostics : kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  TrainArgs train;
  std::string mode = "intra";
  std::size_t k = 5;
  std::string out;
  std::string md;
};

int run_evaluate(const Globals& g, const EvaluateArgs& a) {
  bool diagnostics = false;
  const auto examples = load_datasets(g, a.train.datasets, diagnostics);
  const std::string backend_spec = g.backend.empty() ? "ngram" : g.backend;
  satd::Backend backend = backend_spec == "ngram" ? satd::Backend(trainable(g, a.train))
                                                  : satd::Backend(fixed_backend(g, backend_spec));
  const std::string model_name = backend_spec == "ngram" ? "ngram" : backend_spec;

  std::string json;
  satd::MetricsReport headline;
  if (a.mode == "intra") {
    satd::SplitSpec spec;
    spec.seed = g.seed;
    const auto result = satd::run_intra_project(examples, spec, backend);
    if (result.selected) {
      std::cerr << fmt::format("selected lr={:g} wd={:g}\n", result.selected->learning_rate,
                               result.selected->weight_decay);
    }
    json = satd::to_json(result);
    headline = result.test;
  } else if (a.mode == "cross") {
    satd::CrossProjectOptions options;
    options.jobs = g.jobs;
    const auto result = satd::run_cross_project(examples, a.k, g.seed, backend, options);
    json = satd::to_json(result);
    headline = result.averaged;
  } else {
    throw satd::Error(satd::ErrorCode::InvalidArgument, "--mode must be intra or cross");
  }
  json += "\n";

  const std::vector<std::pair<std::string, satd::MetricsReport>> rows = {{model_name, headline}};
  const std::string table = satd::markdown_table(rows);
  if (!a.out.empty()) write_file(a.out, json);
  if (!a.md.empty()) write_file(a.md, table);
  if (a.out.empty()) emit(g, g.format == "md" ? table : json);
  return diagnostics ? kExitDiagnostics : kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::vector<std::string> repos;
  std::vector<std::string> baseline;
  std::vector<std::string> domains;
  std::vector<std::string> baseline_domains;
  std::string criteria;
  std::string metadata;
  bool enforce_criteria = false;
  bool compare = false;
  std::string render;
  std::string sarif;
  std::vector<std::string> langs;
};

std::string domain_for(const std::vector<std::string>& domains, std::size_t i) {
  if (domains.empty()) return "";
  return domains.size() == 1 ? domains.front() : domains.at(i);
}

std::vector<satd::RepoReport> analyze_all(const Globals& g, const AnalyzeArgs& a, const satd::Classifier& backend,
                                          const std::vector<std::string>& repos,
                                          const std::vector<std::string>& domains, bool& diagnostics) {
  if (domains.size() > 1 && domains.size() != repos.size()) {
    throw satd::Error(satd::ErrorCode::InvalidArgument, "give one --domain, or one per repository");
  }
  std::optional<satd::SelectionCriteria> criteria;
  std::unique_ptr<satd::LocalMetadataFile> metadata;
  if (!a.criteria.empty()) criteria = satd::SelectionCriteria::from_file(a.criteria);
  if (!a.metadata.empty()) metadata = std::make_unique<satd::LocalMetadataFile>(a.metadata);
  if (criteria && !metadata) throw satd::Error(satd::ErrorCode::InvalidArgument, "--criteria needs --metadata");

  std::vector<satd::RepoReport> reports;
  for (std::size_t i = 0; i < repos.size(); ++i) {
    satd::AnalyzeConfig config;
    config.scan.jobs = g.jobs;
    if (!a.langs.empty()) config.scan.languages = parse_languages(a.langs);
    config.stop_words = stop_word_policy(g.stop_words);
    config.domain_tag = domain_for(domains, i);

    if (criteria) {
      const std::string name = std::filesystem::weakly_canonical(repos[i]).filename().string();
      const auto meta = metadata->lookup(name);
      if (!meta) throw satd::Error(satd::ErrorCode::MissingField, "no metadata for " + name);
      const auto verdict = satd::check_selection(*meta, *criteria);
      if (!verdict.passed) {
        std::string reasons;
        for (const auto& r : verdict.reasons) reasons += (reasons.empty() ? "" : ", ") + r;
        std::cerr << fmt::format("warning: {} fails selection criteria ({})\n", name, reasons);
        diagnostics = true;
        if (a.enforce_criteria) continue;
      }
    }
    auto report = satd::analyze_repo(repos[i], backend, config);
    print_diagnostics(report.diagnostics);
    diagnostics = diagnostics || !report.diagnostics.empty() || !report.complete;
    log(g, 1, fmt::format("{}: {} comments, {} SATD", report.repo_name, report.total_comments, report.total_satd));
    reports.push_back(std::move(report));
  }
  return reports;
}

int run_analyze(const Globals& g, const AnalyzeArgs& a) {
  const auto backend = fixed_backend(g, g.backend.empty() ? "patterns" : g.backend);
  const std::string render = a.render.empty() ? g.format : a.render;
  bool diagnostics = false;

  if (a.compare) {
    std::vector<std::string> left = a.repos;
    std::vector<std::string> right = a.baseline;
    std::vector<std::string> left_domains = a.domains;
    std::vector<std::string> right_domains = a.baseline_domains;
    if (right.empty()) {
      if (left.size() != 2) {
        throw satd::Error(satd::ErrorCode::InvalidArgument, "--compare needs --baseline or exactly two repositories");
      }
      right = {left.back()};
      left.pop_back();
      if (left_domains.size() == 2) {
        right_domains = {left_domains.back()};
        left_domains.pop_back();
      }
    }
    const auto a_cohort = satd::cohort_report(analyze_all(g, a, *backend, left, left_domains, diagnostics));
    const auto b_cohort = satd::cohort_report(analyze_all(g, a, *backend, right, right_domains, diagnostics));
    const auto comparison = satd::compare_cohorts(a_cohort, b_cohort);
    emit(g, render == "md" ? satd::render_markdown(comparison) : satd::render_json(comparison));
    return diagnostics ? kExitDiagnostics : kExitOk;
  }

  auto reports = analyze_all(g, a, *backend, a.repos, a.domains, diagnostics);
  if (!a.sarif.empty()) {
    std::string records;
    for (const auto& r : reports) records += satd::render_sarif(r);
    write_file(a.sarif, records);
  }
  if (reports.empty()) {
    std::cerr << "warning: no repository passed the selection criteria\n";
    return kExitDiagnostics;
  }
  std::string text;
  if (render == "csv") {
    text = satd::render_csv(reports);
  } else if (reports.size() == 1) {
    text = render == "md" ? satd::render_markdown(reports) : satd::render_json(reports.front());
  } else {
    const auto cohort = satd::cohort_report(reports);
    text = render == "md" ? satd::render_markdown(cohort) : satd::render_json(cohort);
  }
  emit(g, text);
  return diagnostics ? kExitDiagnostics : kExitOk;
}

// ---- serve-check -----------------------------------------------------------

int run_serve_check(const Globals& g, const std::string& url) {
  const auto endpoint = remote_endpoint(url);
  const auto info = satd::handshake(endpoint);
  emit(g, fmt::format("{} ok: model={} max_length={}\n", endpoint.base_url, info.model_name, info.max_length));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine, classify and report self-admitted technical debt in source comments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags");

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_flag("-v,--verbose", g.verbosity, "More logging on stderr");
  app.add_option("-j,--jobs", g.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--backend", g.backend, "ngram[:MODEL] | patterns[:RULES] | remote[:URL]");
  app.add_option("--stop-words", g.stop_words, "none | file:PATH")->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the primary output here instead of stdout");

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "Emit every comment as JSON lines");
  extract_cmd->add_option("path", extract.path, "Repository root")->required();
  extract_cmd->add_option("--langs", extract.langs, "Only these languages")->delimiter(',');

  auto add_train_options = [](CLI::App* cmd, TrainArgs& t) {
    cmd->add_option("--dataset", t.datasets, "CSV or JSONL dataset (repeatable; env SATD_DATASET)");
    cmd->add_flag("--grid", t.grid, "Search the 3x3 learning-rate x weight-decay grid");
    cmd->add_option("--lr", t.lr, "Learning rate")->capture_default_str();
    cmd->add_option("--wd", t.wd, "Weight decay")->capture_default_str();
    cmd->add_option("--epochs", t.epochs, "Maximum epochs")->capture_default_str();
    cmd->add_option("--batch-size", t.batch_size, "Mini-batch size")->capture_default_str();
    cmd->add_option("--min-count", t.min_count, "Vocabulary frequency floor")->capture_default_str();
    cmd->add_option("--augment-label", t.augment_label, "Paraphrase-augment this label in the training split");
    cmd->add_option("--paraphrase-endpoint", t.paraphrase_endpoint, "Chat-completions base URL (default: offline stub)");
  };

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train the n-gram classifier");
  add_train_options(train_cmd, train);
  train_cmd->add_option("--model-out", train.model_out, "Model file")->capture_default_str();
  train_cmd->add_option("--report-out", train.report_out, "Metrics report file (default: output)");

  EvaluateArgs evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Intra- or cross-project evaluation");
  add_train_options(evaluate_cmd, evaluate.train);
  evaluate_cmd->add_option("--mode", evaluate.mode, "intra | cross")
      ->check(CLI::IsMember({"intra", "cross"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--k", evaluate.k, "Folds for cross mode")->capture_default_str();
  evaluate_cmd->add_option("--out", evaluate.out, "JSON report file");
  evaluate_cmd->add_option("--md", evaluate.md, "Markdown table file");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-repository SATD report");
  analyze_cmd->add_option("repos", analyze.repos, "Repository roots")->required();
  analyze_cmd->add_option("--domain", analyze.domains, "Domain tag (one, or one per repository)");
  analyze_cmd->add_option("--baseline", analyze.baseline, "Comparison cohort for --compare");
  analyze_cmd->add_option("--baseline-domain", analyze.baseline_domains, "Domain tags for --baseline");
  analyze_cmd->add_flag("--compare", analyze.compare, "Ratios of the repos against the baseline cohort");
  analyze_cmd->add_option("--criteria", analyze.criteria, "Selection criteria JSON");
  analyze_cmd->add_option("--metadata", analyze.metadata, "Local repository metadata JSON");
  analyze_cmd->add_flag("--enforce-criteria", analyze.enforce_criteria, "Skip repositories failing the criteria");
  analyze_cmd->add_option("--render", analyze.render, "Report format (overrides --format)")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  analyze_cmd->add_option("--sarif", analyze.sarif, "Write instance records here");
  analyze_cmd->add_option("--langs", analyze.langs, "Only these languages")->delimiter(',');

  std::string serve_url;
  auto* serve_cmd = app.add_subcommand("serve-check", "Handshake with an inference server");
  serve_cmd->add_option("url", serve_url, "Base URL (default: env SATD_ENDPOINT)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (*extract_cmd) return run_extract(g, extract);
    if (*train_cmd) return run_train(g, train);
    if (*evaluate_cmd) return run_evaluate(g, evaluate);
    if (*analyze_cmd) return run_analyze(g, analyze);
    if (*serve_cmd) return run_serve_check(g, serve_url);
  } catch (const satd::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
