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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "satd/classifier.hpp"
#include "satd/corpus.hpp"
#include "satd/label.hpp"
#include "satd/ngram.hpp"

namespace satd {

// Indexed [true][predicted].
struct ConfusionMatrix {
  PerLabel<PerLabel<std::size_t>> counts{};

  std::size_t total() const noexcept;
  bool operator==(const ConfusionMatrix&) const = default;
};

// Throws Error{LengthMismatch, Empty}.
ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);

struct LabelMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double support = 0.0;  // integral per fold; a mean after averaging
  bool operator==(const LabelMetrics&) const = default;
};

struct MetricsReport {
  PerLabel<LabelMetrics> per_label{};
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  bool operator==(const MetricsReport&) const = default;
};

/// Per-label precision, recall and F1 with 0/0 taken as 0; macro F1 is the
/// plain mean over all six labels and weighted F1 is weighted by true-class
/// support. Throws Error{EmptyMatrix}.
MetricsReport metrics(const ConfusionMatrix& cm);

// Element-wise mean. Throws Error{Empty}.
MetricsReport average_reports(std::span<const MetricsReport> reports);

inline constexpr std::array<double, 3> kLearningRateGrid = {1e-5, 5e-5, 1e-4};
inline constexpr std::array<double, 3> kWeightDecayGrid = {0.0, 0.01, 0.1};

// Reference scores of the transformer models; desk-scale runs are not
// expected to approach them.
inline constexpr double kReferenceIntraWeightedF1 = 0.9827;
inline constexpr double kReferenceCrossWeightedF1 = 0.9337;
inline constexpr double kReferenceCrossMacroF1 = 0.7621;

struct TrainableBackend {
  NgramConfig config;
  bool grid = false;  // search kLearningRateGrid x kWeightDecayGrid
  // Optional rewrite of the training split only (e.g. minority augmentation).
  std::function<std::vector<LabeledExample>(std::vector<LabeledExample>)> augment_train;
};

using Backend = std::variant<TrainableBackend, std::shared_ptr<const Classifier>>;

struct GridRun {
  double learning_rate = 0.0;
  double weight_decay = 0.0;
  double validation_weighted_f1 = 0.0;
};

struct IntraProjectResult {
  MetricsReport test;
  std::vector<GridRun> grid_runs;   // one entry per configuration tried
  std::optional<GridRun> selected;  // trainable backends only
  std::optional<NgramModel> model;
};

/// 80/10/10 split; trains on train with validation early stopping (and picks
/// the best grid point by validation weighted F1), then scores the test split
/// once.
IntraProjectResult run_intra_project(std::span<const LabeledExample> examples, const SplitSpec& spec,
                                     const Backend& backend);

struct CrossProjectOptions {
  std::size_t max_epochs = 5;
  std::size_t patience = 2;
  double validation_fraction = 0.1;
  int jobs = 0;
};

struct CrossProjectResult {
  std::vector<MetricsReport> per_fold;
  MetricsReport averaged;
  std::vector<std::vector<std::string>> test_projects;  // by fold
};

/// Project-disjoint k-fold evaluation. Trainable backends train per fold on
/// a seeded split of the fold's training projects (10% held out for early
/// stopping). Folds run concurrently and reduce in fold order.
/// Throws Error{TooFewGroups} and propagates backend errors.
CrossProjectResult run_cross_project(std::span<const LabeledExample> examples, std::size_t k,
                                     std::uint64_t seed, const Backend& backend,
                                     const CrossProjectOptions& options = {});

// Scores a fixed classifier on labeled examples.
MetricsReport score(const Classifier& backend, std::span<const LabeledExample> examples);

std::string to_json(const MetricsReport& report);
MetricsReport metrics_report_from_json(const std::string& json);
std::string to_json(const IntraProjectResult& result);
std::string to_json(const CrossProjectResult& result);

// "| Model | REQ F1 | C/D F1 | ... | Weighted Avg F1 |" with 4 decimals.
std::string markdown_table(std::span<const std::pair<std::string, MetricsReport>> rows);

namespace kernels {
std::vector<MetricsReport> run_folds_serial(std::span<const LabeledExample> examples,
                                            const FoldAssignment& folds, const Backend& backend,
                                            const CrossProjectOptions& options);
std::vector<MetricsReport> run_folds_parallel(std::span<const LabeledExample> examples,
                                              const FoldAssignment& folds, const Backend& backend,
                                              const CrossProjectOptions& options);
}  // namespace kernels

}  // namespace satd
