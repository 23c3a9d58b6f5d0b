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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "satd/corpus.hpp"
#include "satd/label.hpp"

namespace satd {

/// Predicted label plus a probability for every label. Scores are
/// non-negative, sum to 1, and `label` is their argmax with ties going to the
/// lowest label index.
struct Classification {
  Label label = Label::NonSatd;
  PerLabel<double> scores{};

  double score() const noexcept { return scores[index_of(label)]; }
  bool operator==(const Classification&) const = default;
};

Label argmax_label(const PerLabel<double>& scores) noexcept;
Classification make_classification(const PerLabel<double>& scores) noexcept;

class Classifier {
 public:
  virtual ~Classifier() = default;
  // One result per text, in input order. Texts must already be normalized.
  virtual std::vector<Classification> classify(std::span<const std::string> texts) const = 0;
  virtual std::string describe() const = 0;
};

// Checks the normalized-text precondition, then delegates.
// Throws Error{InvalidArgument} naming the first offending index.
std::vector<Classification> classify(std::span<const std::string> texts, const Classifier& backend);

struct PatternRule {
  std::string pattern;  // normalized, non-empty
  Label label;
};

/// Keyword matcher: the first rule whose pattern occurs in the text on word
/// boundaries wins; no match means NonSatd. Scores are one-hot.
class PatternRuleSet final : public Classifier {
 public:
  // Throws Error{InvalidArgument} for empty or non-normalized patterns.
  explicit PatternRuleSet(std::vector<PatternRule> rules);

  // todo, fixme, hack, xxx, workaround, "does not work", "not correct".
  // A small placeholder list, not a curated pattern catalogue.
  static PatternRuleSet defaults();
  // Lines of "<wire-label> <pattern words...>"; '#' starts a comment line.
  static PatternRuleSet from_file(const std::filesystem::path& path);

  Label match(const std::string& text) const;
  std::vector<Classification> classify(std::span<const std::string> texts) const override;
  std::string describe() const override;
  const std::vector<PatternRule>& rules() const noexcept { return rules_; }

 private:
  std::vector<PatternRule> rules_;
};

// Predicts the most frequent training label; scores are the training priors.
class MajorityClassifier final : public Classifier {
 public:
  explicit MajorityClassifier(std::span<const LabeledExample> train);

  std::vector<Classification> classify(std::span<const std::string> texts) const override;
  std::string describe() const override;

 private:
  Classification prediction_;
};

}  // namespace satd
