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

#include "satd/classifier.hpp"

#include <fstream>
#include <sstream>

#include "satd/error.hpp"
#include "satd/preprocess.hpp"

namespace satd {

Label argmax_label(const PerLabel<double>& scores) noexcept {
  std::size_t best = 0;
  for (std::size_t l = 1; l < kLabelCount; ++l) {
    if (scores[l] > scores[best]) best = l;
  }
  return label_at(best);
}

Classification make_classification(const PerLabel<double>& scores) noexcept {
  return Classification{argmax_label(scores), scores};
}

std::vector<Classification> classify(std::span<const std::string> texts, const Classifier& backend) {
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (!is_normalized(texts[i])) {
      throw Error(ErrorCode::InvalidArgument, "text " + std::to_string(i) + " is not normalized");
    }
  }
  return backend.classify(texts);
}

namespace {

// Pattern occurrence bounded by spaces or the ends of the text.
bool contains_words(const std::string& text, const std::string& pattern) {
  std::size_t at = text.find(pattern);
  while (at != std::string::npos) {
    const bool left = at == 0 || text[at - 1] == ' ';
    const std::size_t end = at + pattern.size();
    const bool right = end == text.size() || text[end] == ' ';
    if (left && right) return true;
    at = text.find(pattern, at + 1);
  }
  return false;
}

}  // namespace

PatternRuleSet::PatternRuleSet(std::vector<PatternRule> rules) : rules_(std::move(rules)) {
  for (const auto& rule : rules_) {
    if (rule.pattern.empty() || !is_normalized(rule.pattern)) {
      throw Error(ErrorCode::InvalidArgument, "pattern '" + rule.pattern + "' is not normalized");
    }
  }
}

PatternRuleSet PatternRuleSet::defaults() {
  return PatternRuleSet({
      {"todo", Label::Requirement},
      {"fixme", Label::CodeDesign},
      {"hack", Label::CodeDesign},
      {"xxx", Label::CodeDesign},
      {"workaround", Label::CodeDesign},
      {"does not work", Label::Requirement},
      {"not correct", Label::Scientific},
  });
}

PatternRuleSet PatternRuleSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read pattern file " + path.string());
  std::vector<PatternRule> rules;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string label_name;
    if (!(words >> label_name) || label_name.front() == '#') continue;
    std::string rest;
    std::getline(words, rest);
    auto pattern = normalize(rest);
    if (!pattern) throw Error(ErrorCode::InvalidArgument, "empty pattern in " + path.string());
    rules.push_back(PatternRule{std::move(*pattern), decode_label(label_name)});
  }
  return PatternRuleSet(std::move(rules));
}

Label PatternRuleSet::match(const std::string& text) const {
  for (const auto& rule : rules_) {
    if (contains_words(text, rule.pattern)) return rule.label;
  }
  return Label::NonSatd;
}

std::vector<Classification> PatternRuleSet::classify(std::span<const std::string> texts) const {
  std::vector<Classification> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    PerLabel<double> scores{};
    scores[index_of(match(text))] = 1.0;
    out.push_back(make_classification(scores));
  }
  return out;
}

std::string PatternRuleSet::describe() const {
  return "patterns(" + std::to_string(rules_.size()) + " rules)";
}

MajorityClassifier::MajorityClassifier(std::span<const LabeledExample> train) {
  if (train.empty()) throw Error(ErrorCode::EmptyCorpus, "majority baseline needs training data");
  const auto summary = DatasetSummary::of(train);
  PerLabel<double> priors{};
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    priors[l] = static_cast<double>(summary.counts[l]) / static_cast<double>(summary.total);
  }
  prediction_ = make_classification(priors);
}

std::vector<Classification> MajorityClassifier::classify(std::span<const std::string> texts) const {
  return std::vector<Classification>(texts.size(), prediction_);
}

std::string MajorityClassifier::describe() const {
  return "majority(" + std::string(wire_name(prediction_.label)) + ")";
}

}  // namespace satd
