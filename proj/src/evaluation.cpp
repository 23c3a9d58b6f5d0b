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

#include "satd/evaluation.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "satd/error.hpp"
#include "satd/random.hpp"
#include "satd/scan.hpp"

namespace satd {

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t ConfusionMatrix::total() const noexcept {
  std::size_t n = 0;
  for (const auto& row : counts)
    for (std::size_t c : row) n += c;
  return n;
}

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::LengthMismatch,
                fmt::format("{} true labels vs {} predictions", y_true.size(), y_pred.size()));
  }
  if (y_true.empty()) throw Error(ErrorCode::Empty, "no examples to tally");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) ++cm.counts[index_of(y_true[i])][index_of(y_pred[i])];
  return cm;
}

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::EmptyMatrix, "confusion matrix is empty");
  MetricsReport r;
  double macro = 0.0;
  double weighted = 0.0;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    double tp = static_cast<double>(cm.counts[l][l]);
    double predicted = 0.0;
    double actual = 0.0;
    for (std::size_t o = 0; o < kLabelCount; ++o) {
      predicted += static_cast<double>(cm.counts[o][l]);
      actual += static_cast<double>(cm.counts[l][o]);
    }
    LabelMetrics& m = r.per_label[l];
    m.precision = ratio(tp, predicted);
    m.recall = ratio(tp, actual);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.support = actual;
    macro += m.f1;
    weighted += actual * m.f1;
  }
  r.macro_f1 = macro / static_cast<double>(kLabelCount);
  r.weighted_f1 = weighted / static_cast<double>(total);
  return r;
}

MetricsReport average_reports(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::Empty, "no reports to average");
  const double n = static_cast<double>(reports.size());
  MetricsReport avg;
  for (const auto& r : reports) {
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      avg.per_label[l].precision += r.per_label[l].precision;
      avg.per_label[l].recall += r.per_label[l].recall;
      avg.per_label[l].f1 += r.per_label[l].f1;
      avg.per_label[l].support += r.per_label[l].support;
    }
    avg.macro_f1 += r.macro_f1;
    avg.weighted_f1 += r.weighted_f1;
  }
  for (auto& m : avg.per_label) {
    m.precision /= n;
    m.recall /= n;
    m.f1 /= n;
    m.support /= n;
  }
  avg.macro_f1 /= n;
  avg.weighted_f1 /= n;
  return avg;
}

MetricsReport score(const Classifier& backend, std::span<const LabeledExample> examples) {
  std::vector<std::string> texts;
  std::vector<Label> truth;
  texts.reserve(examples.size());
  truth.reserve(examples.size());
  for (const auto& e : examples) {
    texts.push_back(e.text);
    truth.push_back(e.label);
  }
  const auto predicted = classify(texts, backend);
  std::vector<Label> labels;
  labels.reserve(predicted.size());
  for (const auto& c : predicted) labels.push_back(c.label);
  return metrics(confusion(truth, labels));
}

IntraProjectResult run_intra_project(std::span<const LabeledExample> examples, const SplitSpec& spec,
                                     const Backend& backend) {
  DataSplit parts = split(examples, spec);
  IntraProjectResult result;

  if (const auto* fixed = std::get_if<std::shared_ptr<const Classifier>>(&backend)) {
    if (!*fixed) throw Error(ErrorCode::InvalidArgument, "null classifier backend");
    result.test = score(**fixed, parts.test);
    return result;
  }

  const auto& trainable = std::get<TrainableBackend>(backend);
  if (trainable.augment_train) parts.train = trainable.augment_train(std::move(parts.train));
  std::vector<std::pair<double, double>> points;
  if (trainable.grid) {
    for (double lr : kLearningRateGrid)
      for (double wd : kWeightDecayGrid) points.emplace_back(lr, wd);
  } else {
    points.emplace_back(trainable.config.learning_rate, trainable.config.weight_decay);
  }

  // First grid point wins ties.
  for (const auto& [lr, wd] : points) {
    NgramConfig config = trainable.config;
    config.learning_rate = lr;
    config.weight_decay = wd;
    NgramModel model = train_ngram(parts.train, parts.validation, config);
    const double f1 = score(model, parts.validation).weighted_f1;
    result.grid_runs.push_back({lr, wd, f1});
    if (!result.selected || f1 > result.selected->validation_weighted_f1) {
      result.selected = result.grid_runs.back();
      result.model = std::move(model);
    }
  }
  result.test = score(*result.model, parts.test);
  return result;
}

namespace {

MetricsReport run_fold(std::span<const LabeledExample> examples, const FoldAssignment& folds, std::size_t fold,
                       const Backend& backend, const CrossProjectOptions& options) {
  FoldSplit parts = fold_split(examples, folds, fold);
  if (parts.test.empty()) throw Error(ErrorCode::Empty, fmt::format("fold {} has no test examples", fold));

  if (const auto* fixed = std::get_if<std::shared_ptr<const Classifier>>(&backend)) {
    if (!*fixed) throw Error(ErrorCode::InvalidArgument, "null classifier backend");
    return score(**fixed, parts.test);
  }

  const auto& trainable = std::get<TrainableBackend>(backend);
  Rng rng(folds.seed * 0x9E3779B97F4A7C15ULL + fold);
  rng.shuffle(parts.train);
  const auto n_val = static_cast<std::size_t>(
      std::floor(static_cast<double>(parts.train.size()) * options.validation_fraction + 1e-9));
  std::vector<LabeledExample> validation(parts.train.end() - static_cast<std::ptrdiff_t>(n_val), parts.train.end());
  parts.train.resize(parts.train.size() - n_val);

  NgramConfig config = trainable.config;
  config.max_epochs = options.max_epochs;
  config.patience = options.patience;
  // A fold's training projects need not cover every label.
  config.require_all_labels = false;
  const NgramModel model = train_ngram(parts.train, validation, config);
  return score(model, parts.test);
}

}  // namespace

namespace kernels {

std::vector<MetricsReport> run_folds_serial(std::span<const LabeledExample> examples,
                                            const FoldAssignment& folds, const Backend& backend,
                                            const CrossProjectOptions& options) {
  std::vector<MetricsReport> out;
  out.reserve(folds.k);
  for (std::size_t f = 0; f < folds.k; ++f) out.push_back(run_fold(examples, folds, f, backend, options));
  return out;
}

std::vector<MetricsReport> run_folds_parallel(std::span<const LabeledExample> examples,
                                              const FoldAssignment& folds, const Backend& backend,
                                              const CrossProjectOptions& options) {
  std::vector<MetricsReport> out(folds.k);
  std::vector<std::exception_ptr> errors(folds.k);
  const auto k = static_cast<std::ptrdiff_t>(folds.k);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(options.jobs))
  for (std::ptrdiff_t f = 0; f < k; ++f) {
    try {
      out[f] = run_fold(examples, folds, static_cast<std::size_t>(f), backend, options);
    } catch (...) {
      errors[f] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace kernels

CrossProjectResult run_cross_project(std::span<const LabeledExample> examples, std::size_t k, std::uint64_t seed,
                                     const Backend& backend, const CrossProjectOptions& options) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const FoldAssignment folds = stratified_group_kfold(examples, k, seed);
  CrossProjectResult result;
  result.per_fold = options.jobs == 1 ? kernels::run_folds_serial(examples, folds, backend, options)
                                      : kernels::run_folds_parallel(examples, folds, backend, options);
  result.averaged = average_reports(result.per_fold);
  for (std::size_t f = 0; f < k; ++f) result.test_projects.push_back(folds.test_projects(f));
  return result;
}

namespace {

ordered_json report_json(const MetricsReport& r) {
  ordered_json per_label = ordered_json::object();
  for (Label l : kAllLabels) {
    const auto& m = r.per_label[index_of(l)];
    per_label[std::string(wire_name(l))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  return {{"per_label", per_label}, {"macro_f1", r.macro_f1}, {"weighted_f1", r.weighted_f1}};
}

ordered_json grid_json(const GridRun& g) {
  return {{"learning_rate", g.learning_rate},
          {"weight_decay", g.weight_decay},
          {"validation_weighted_f1", g.validation_weighted_f1}};
}

}  // namespace

std::string to_json(const MetricsReport& report) { return report_json(report).dump(2); }

MetricsReport metrics_report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    MetricsReport r;
    for (Label l : kAllLabels) {
      const json& m = j.at("per_label").at(std::string(wire_name(l)));
      r.per_label[index_of(l)] = {m.at("precision").get<double>(), m.at("recall").get<double>(),
                                  m.at("f1").get<double>(), m.at("support").get<double>()};
    }
    r.macro_f1 = j.at("macro_f1").get<double>();
    r.weighted_f1 = j.at("weighted_f1").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("metrics report: ") + e.what());
  }
}

std::string to_json(const IntraProjectResult& result) {
  ordered_json j;
  j["mode"] = "intra";
  j["test"] = report_json(result.test);
  if (result.selected) j["selected"] = grid_json(*result.selected);
  ordered_json runs = ordered_json::array();
  for (const auto& g : result.grid_runs) runs.push_back(grid_json(g));
  j["grid_runs"] = runs;
  return j.dump(2);
}

std::string to_json(const CrossProjectResult& result) {
  ordered_json j;
  j["mode"] = "cross";
  j["k"] = result.per_fold.size();
  ordered_json folds = ordered_json::array();
  for (std::size_t f = 0; f < result.per_fold.size(); ++f) {
    ordered_json entry = report_json(result.per_fold[f]);
    entry["test_projects"] = result.test_projects.size() > f ? result.test_projects[f] : std::vector<std::string>{};
    folds.push_back(entry);
  }
  j["per_fold"] = folds;
  j["averaged"] = report_json(result.averaged);
  return j.dump(2);
}

std::string markdown_table(std::span<const std::pair<std::string, MetricsReport>> rows) {
  static constexpr std::array kOrder = {Label::Requirement, Label::CodeDesign, Label::Documentation,
                                        Label::Test,        Label::Scientific, Label::NonSatd};
  std::ostringstream out;
  out << "| Model |";
  for (Label l : kOrder) out << ' ' << short_name(l) << " F1 |";
  out << " Macro Avg F1 | Weighted Avg F1 |\n|---|";
  for (std::size_t i = 0; i < kOrder.size() + 2; ++i) out << "---|";
  out << '\n';
  for (const auto& [name, r] : rows) {
    out << "| " << name << " |";
    for (Label l : kOrder) out << fmt::format(" {:.4f} |", r.per_label[index_of(l)].f1);
    out << fmt::format(" {:.4f} | {:.4f} |\n", r.macro_f1, r.weighted_f1);
  }
  return out.str();
}

}  // namespace satd
