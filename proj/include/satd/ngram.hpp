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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "satd/classifier.hpp"
#include "satd/corpus.hpp"

namespace satd {

struct NgramConfig {
  double learning_rate = 0.01;
  double weight_decay = 0.01;
  std::size_t max_epochs = 10;
  std::size_t patience = 2;  // epochs without validation-loss improvement
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  std::size_t min_count = 2;  // vocabulary term-frequency floor (training split only)
  std::vector<int> ngram_orders = {1, 2};
  bool require_all_labels = true;
};

struct TrainingMeta {
  std::uint64_t seed = 0;
  double learning_rate = 0.0;
  double weight_decay = 0.0;
  std::size_t batch_size = 0;
  std::size_t max_epochs = 0;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;  // 1-based; 0 when no validation data
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
};

// (feature index, term count), sorted by index.
using SparseFeatures = std::vector<std::pair<std::uint32_t, double>>;

std::vector<std::string> ngrams(const std::string& text, std::span<const int> orders);

/// Multinomial logistic regression over unigram and bigram counts.
/// Immutable once trained; concurrent classify() calls are safe.
class NgramModel final : public Classifier {
 public:
  NgramModel() = default;
  // Zero weights over a fixed vocabulary (index = position).
  NgramModel(std::vector<std::string> vocabulary, std::vector<int> orders);

  std::size_t num_features() const noexcept { return vocabulary_.size(); }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<int>& orders() const noexcept { return orders_; }
  const TrainingMeta& meta() const noexcept { return meta_; }

  double weight(Label label, std::size_t feature) const { return weights_[offset(label, feature)]; }
  void set_weight(Label label, std::size_t feature, double value) { weights_[offset(label, feature)] = value; }
  double bias(Label label) const { return bias_[index_of(label)]; }
  void set_bias(Label label, double value) { bias_[index_of(label)] = value; }
  std::vector<double>& raw_weights() noexcept { return weights_; }
  const std::vector<double>& raw_weights() const noexcept { return weights_; }
  PerLabel<double>& raw_bias() noexcept { return bias_; }
  const PerLabel<double>& raw_bias() const noexcept { return bias_; }

  // Gaussian-free uniform init in [-scale, scale], for gradient checks.
  void randomize(std::uint64_t seed, double scale);

  SparseFeatures features(const std::string& text) const;
  PerLabel<double> logits(const SparseFeatures& x) const;
  PerLabel<double> probabilities(const std::string& text) const;

  // Worker threads for classify(); 0 = OpenMP default.
  void set_jobs(int jobs) noexcept { jobs_ = jobs; }

  std::vector<Classification> classify(std::span<const std::string> texts) const override;
  std::string describe() const override;

  // Versioned JSON container. Throws Error{Io, MalformedModel}.
  void save(const std::filesystem::path& path) const;
  static NgramModel load(const std::filesystem::path& path);
  std::string to_json() const;
  static NgramModel from_json(const std::string& json);

  void set_meta(TrainingMeta meta) { meta_ = std::move(meta); }

 private:
  std::size_t offset(Label label, std::size_t feature) const noexcept {
    return index_of(label) * vocabulary_.size() + feature;
  }
  void rebuild_index();

  std::vector<std::string> vocabulary_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<int> orders_ = {1, 2};
  std::vector<double> weights_;  // row-major [label][feature]
  PerLabel<double> bias_{};
  TrainingMeta meta_;
  int jobs_ = 0;
};

// N-grams with at least `min_count` occurrences, sorted lexicographically.
std::vector<std::string> build_vocabulary(std::span<const LabeledExample> train,
                                          std::span<const int> orders, std::size_t min_count);

/// Mini-batch training of the softmax model under cross-entropy with AdamW
/// updates. Stops after `patience` epochs without validation-loss
/// improvement and keeps the best-epoch weights. Deterministic under seed.
/// Throws Error{MissingLabelInTrain, DegenerateData, EmptyCorpus}.
NgramModel train_ngram(std::span<const LabeledExample> train, std::span<const LabeledExample> validation,
                       const NgramConfig& config);

// Mean cross-entropy over the batch.
double cross_entropy_loss(const NgramModel& model, std::span<const LabeledExample> batch);

struct Gradient {
  std::vector<double> weights;  // same layout as NgramModel::raw_weights()
  PerLabel<double> bias{};
};

// Analytic gradient of cross_entropy_loss.
Gradient cross_entropy_gradient(const NgramModel& model, std::span<const LabeledExample> batch);

struct GradientCheckOptions {
  double sample_fraction = 0.01;
  double step = 1e-5;
  double tolerance = 1e-4;  // passes when max relative error <= tolerance
  std::uint64_t seed = 0;
};

struct GradientCheckReport {
  std::size_t checked = 0;
  double max_relative_error = 0.0;
  std::string worst_coordinate;  // e.g. "w[test][\"no tests\"]" or "b[requirement]"
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  bool passed = false;
};

/// Compares the analytic gradient with central differences on
/// ceil(sample_fraction * #parameters) coordinates drawn from those the
/// batch touches. Relative error is |a - n| / max(|a|, |n|, 1e-6).
/// Throws Error{GradientMismatch} when the check fails and
/// Error{InvalidArgument} for batches larger than 8.
GradientCheckReport evaluate_gradient(const NgramModel& model, std::span<const LabeledExample> batch,
                                      const GradientCheckOptions& options = {});

namespace kernels {
std::vector<Classification> score_batch_serial(const NgramModel& model, std::span<const std::string> texts);
std::vector<Classification> score_batch_parallel(const NgramModel& model, std::span<const std::string> texts,
                                                 int jobs);
}  // namespace kernels

}  // namespace satd
