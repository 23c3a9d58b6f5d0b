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
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "satd/label.hpp"

namespace satd {

struct LabeledExample {
  std::string project;  // group key for cross-project folds
  std::string text;     // normalized
  Label label = Label::NonSatd;

  auto operator<=>(const LabeledExample&) const = default;
};

struct DatasetSummary {
  PerLabel<std::size_t> counts{};
  std::size_t total = 0;

  static DatasetSummary of(std::span<const LabeledExample> examples);
  bool operator==(const DatasetSummary&) const = default;
};

enum class DatasetFormat { Csv, Jsonl };

// By extension: .jsonl/.ndjson -> Jsonl, everything else Csv.
DatasetFormat dataset_format_for(const std::filesystem::path& path);

struct LoadedDataset {
  std::vector<LabeledExample> examples;
  std::size_t dropped_empty = 0;  // rows whose text normalized to nothing
  std::vector<std::string> diagnostics;
};

/// Reads a {project, text, label} table. Text is normalized (no stop-word
/// removal) and labels decoded from wire names.
/// Throws Error{Io, MalformedRow, UnknownLabel, MissingColumn}.
LoadedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
LoadedDataset load_dataset(const std::filesystem::path& path);

struct MergedDataset {
  std::vector<LabeledExample> examples;
  DatasetSummary summary;
};

// Concatenates and removes exact (project, text, label) duplicates, keeping
// the first occurrence.
MergedDataset merge(std::span<const std::vector<LabeledExample>> datasets);

struct SplitSpec {
  double train_fraction = 0.8;
  double validation_fraction = 0.1;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;

  // Throws Error{InvalidArgument}.
  void validate() const;
};

struct DataSplit {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> validation;
  std::vector<LabeledExample> test;
};

/// Seeded shuffle, then validation and test take floor(n * fraction) examples
/// each and train takes the remainder. Throws Error{TooFewExamples} below 10.
DataSplit split(std::span<const LabeledExample> examples, const SplitSpec& spec);

struct FoldAssignment {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> fold_of_project;

  std::vector<std::string> test_projects(std::size_t fold) const;
};

/// Greedy stratified group k-fold. Projects are visited largest first (ties by
/// name) and each goes to the fold whose pooled label proportions end up
/// closest, in L1, to the global proportions. Fold sizes are capped so every
/// fold receives floor(P/k) or ceil(P/k) projects. A local search over
/// project moves and swaps then lowers the worst fold's deviation (and then
/// the total). The assignment does not depend on `seed`; it is recorded for
/// downstream validation carving.
/// Throws Error{TooFewGroups} when there are fewer than k projects.
FoldAssignment stratified_group_kfold(std::span<const LabeledExample> examples, std::size_t k,
                                      std::uint64_t seed);

struct FoldSplit {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
};

FoldSplit fold_split(std::span<const LabeledExample> examples, const FoldAssignment& folds,
                     std::size_t fold);

// Sum over labels of |fold proportion - global proportion| for each fold's
// test examples. Empty folds report 0.
std::vector<double> fold_label_deviation(std::span<const LabeledExample> examples,
                                         const FoldAssignment& folds);

class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  // Throws Error{ProviderUnavailable} or Error{ProviderRejectedText}.
  virtual std::string paraphrase(const std::string& text) = 0;
};

struct AugmentResult {
  std::vector<LabeledExample> examples;
  std::size_t added = 0;
  std::size_t dropped = 0;  // paraphrases identical to (or empty after) normalization
  std::vector<std::string> diagnostics;
};

/// Appends one paraphrase per example of `target`, with the same project and
/// label, after the original examples. Paraphrases are re-normalized.
AugmentResult augment_minority(std::span<const LabeledExample> examples, Label target,
                               ParaphraseProvider& provider);

}  // namespace satd
