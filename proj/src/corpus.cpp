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

#include "satd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "satd/error.hpp"
#include "satd/preprocess.hpp"
#include "satd/random.hpp"

namespace satd {

namespace fs = std::filesystem;

DatasetSummary DatasetSummary::of(std::span<const LabeledExample> examples) {
  DatasetSummary summary;
  for (const auto& e : examples) ++summary.counts[index_of(e.label)];
  summary.total = examples.size();
  return summary;
}

DatasetFormat dataset_format_for(const fs::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".ndjson") ? DatasetFormat::Jsonl : DatasetFormat::Csv;
}

namespace {

// RFC 4180 records; quoted fields may contain commas, doubled quotes and
// newlines. `line` is the physical line where each record starts.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> parse_csv(const std::string& data) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&](std::size_t next_line) {
    end_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    current.line = next_line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line) + ": stray quote");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record(line);
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::MalformedRow,
                "line " + std::to_string(current.line) + ": unterminated quoted field");
  }
  if (field_started || !field.empty() || !current.fields.empty()) end_record(line);
  return records;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read dataset " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void add_row(LoadedDataset& out, std::size_t line, std::string project, const std::string& text,
             const std::string& label_name) {
  const auto label = parse_wire_name(label_name);
  if (!label) {
    throw Error(ErrorCode::UnknownLabel,
                "line " + std::to_string(line) + ": '" + label_name + "'");
  }
  auto normalized = normalize(text);
  if (!normalized) {
    ++out.dropped_empty;
    out.diagnostics.push_back("line " + std::to_string(line) + ": text normalizes to empty; row dropped");
    return;
  }
  out.examples.push_back(LabeledExample{std::move(project), std::move(*normalized), *label});
}

LoadedDataset load_csv(const fs::path& path) {
  const auto records = parse_csv(read_all(path));
  if (records.empty()) throw Error(ErrorCode::MissingColumn, "project (empty file)");
  const auto& header = records.front().fields;
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::MissingColumn, name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t project = column("project");
  const std::size_t text = column("text");
  const std::size_t label = column("label");

  LoadedDataset out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(rec.line) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(rec.fields.size()));
    }
    add_row(out, rec.line, rec.fields[project], rec.fields[text], rec.fields[label]);
  }
  return out;
}

LoadedDataset load_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read dataset " + path.string());
  LoadedDataset out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!row.is_object()) throw Error(ErrorCode::MalformedRow, "line " + std::to_string(lineno));
    for (const char* key : {"project", "text", "label"}) {
      if (!row.contains(key)) throw Error(ErrorCode::MissingColumn, key);
      if (!row[key].is_string()) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(lineno) + ": '" + key + "' is not a string");
      }
    }
    add_row(out, lineno, row["project"].get<std::string>(), row["text"].get<std::string>(),
            row["label"].get<std::string>());
  }
  return out;
}

}  // namespace

LoadedDataset load_dataset(const fs::path& path, DatasetFormat format) {
  return format == DatasetFormat::Jsonl ? load_jsonl(path) : load_csv(path);
}

LoadedDataset load_dataset(const fs::path& path) { return load_dataset(path, dataset_format_for(path)); }

MergedDataset merge(std::span<const std::vector<LabeledExample>> datasets) {
  MergedDataset out;
  std::set<std::tuple<std::string_view, std::string_view, Label>> seen;
  for (const auto& dataset : datasets) {
    for (const auto& e : dataset) {
      if (seen.emplace(e.project, e.text, e.label).second) out.examples.push_back(e);
    }
  }
  out.summary = DatasetSummary::of(out.examples);
  return out;
}

void SplitSpec::validate() const {
  for (double f : {train_fraction, validation_fraction, test_fraction}) {
    if (!(f > 0.0 && f < 1.0)) throw Error(ErrorCode::InvalidArgument, "split fractions must lie in (0,1)");
  }
  if (std::abs(train_fraction + validation_fraction + test_fraction - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "split fractions must sum to 1");
  }
}

DataSplit split(std::span<const LabeledExample> examples, const SplitSpec& spec) {
  spec.validate();
  if (examples.size() < 10) {
    throw Error(ErrorCode::TooFewExamples,
                "need at least 10 examples, got " + std::to_string(examples.size()));
  }
  std::vector<LabeledExample> shuffled(examples.begin(), examples.end());
  Rng(spec.seed).shuffle(shuffled);

  const double n = static_cast<double>(shuffled.size());
  // The epsilon keeps products like 30 * 0.1 from flooring to 2.
  const auto n_validation = static_cast<std::size_t>(std::floor(n * spec.validation_fraction + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * spec.test_fraction + 1e-9));
  const std::size_t n_train = shuffled.size() - n_validation - n_test;

  DataSplit out;
  auto first = shuffled.begin();
  out.train.assign(std::make_move_iterator(first), std::make_move_iterator(first + n_train));
  first += static_cast<std::ptrdiff_t>(n_train);
  out.validation.assign(std::make_move_iterator(first), std::make_move_iterator(first + n_validation));
  first += static_cast<std::ptrdiff_t>(n_validation);
  out.test.assign(std::make_move_iterator(first), std::make_move_iterator(shuffled.end()));
  return out;
}

std::vector<std::string> FoldAssignment::test_projects(std::size_t fold) const {
  std::vector<std::string> out;
  for (const auto& [project, f] : fold_of_project) {
    if (f == fold) out.push_back(project);
  }
  return out;
}

namespace {

struct LabelTally {
  PerLabel<double> counts{};
  double total = 0.0;

  void add(const LabelTally& other) {
    for (std::size_t l = 0; l < kLabelCount; ++l) counts[l] += other.counts[l];
    total += other.total;
  }
  void remove(const LabelTally& other) {
    for (std::size_t l = 0; l < kLabelCount; ++l) counts[l] -= other.counts[l];
    total -= other.total;
  }
};

double l1_deviation(const LabelTally& tally, const PerLabel<double>& global) {
  if (tally.total == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t l = 0; l < kLabelCount; ++l) sum += std::abs(tally.counts[l] / tally.total - global[l]);
  return sum;
}

PerLabel<double> global_proportions(std::span<const LabeledExample> examples) {
  PerLabel<double> global{};
  for (const auto& e : examples) global[index_of(e.label)] += 1.0;
  for (auto& g : global) g /= static_cast<double>(examples.size());
  return global;
}

// Worst fold deviation first, then the total; smaller is better.
struct Spread {
  double worst = 0.0;
  double total = 0.0;

  bool better_than(const Spread& other) const {
    if (worst < other.worst - 1e-12) return true;
    return std::abs(worst - other.worst) <= 1e-12 && total < other.total - 1e-12;
  }
};

Spread spread_of(const std::vector<double>& deviation) {
  Spread s;
  for (double d : deviation) {
    s.worst = std::max(s.worst, d);
    s.total += d;
  }
  return s;
}

// Hill-climbs the greedy assignment with single-project moves (from a fold
// holding ceil(P/k) projects to one holding floor(P/k)) and pairwise swaps,
// taking the first change that improves the spread, until none does. Fold
// sizes stay within the floor/ceil bounds throughout.
void refine(const std::vector<std::pair<std::string, LabelTally>>& projects, std::vector<std::size_t>& fold_of,
            std::vector<LabelTally>& folds, std::vector<std::size_t>& members, std::size_t base,
            const PerLabel<double>& global) {
  const std::size_t k = folds.size();
  std::vector<double> deviation(k);
  for (std::size_t f = 0; f < k; ++f) deviation[f] = l1_deviation(folds[f], global);
  Spread current = spread_of(deviation);

  // Applies moving `in` into fold b and `out` (if any) into fold a.
  auto try_change = [&](std::size_t i, std::size_t j, bool swap) {
    const std::size_t a = fold_of[i];
    const std::size_t b = swap ? fold_of[j] : j;
    LabelTally fa = folds[a], fb = folds[b];
    fa.remove(projects[i].second);
    fb.add(projects[i].second);
    if (swap) {
      fb.remove(projects[j].second);
      fa.add(projects[j].second);
    }
    auto trial = deviation;
    trial[a] = l1_deviation(fa, global);
    trial[b] = l1_deviation(fb, global);
    const Spread next = spread_of(trial);
    if (!next.better_than(current)) return false;
    folds[a] = fa;
    folds[b] = fb;
    deviation = std::move(trial);
    current = next;
    fold_of[i] = b;
    if (swap) {
      fold_of[j] = a;
    } else {
      --members[a];
      ++members[b];
    }
    return true;
  };

  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < projects.size() && !improved; ++i) {
      for (std::size_t b = 0; b < k && !improved; ++b) {
        if (b != fold_of[i] && members[fold_of[i]] == base + 1 && members[b] == base) {
          improved = try_change(i, b, false);
        }
      }
      for (std::size_t j = i + 1; j < projects.size() && !improved; ++j) {
        if (fold_of[i] != fold_of[j]) improved = try_change(i, j, true);
      }
    }
  }
}

}  // namespace

FoldAssignment stratified_group_kfold(std::span<const LabeledExample> examples, std::size_t k,
                                      std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  std::map<std::string, LabelTally> by_project;
  for (const auto& e : examples) {
    auto& tally = by_project[e.project];
    tally.counts[index_of(e.label)] += 1.0;
    tally.total += 1.0;
  }
  if (by_project.size() < k) {
    throw Error(ErrorCode::TooFewGroups, std::to_string(by_project.size()) + " projects for k = " +
                                             std::to_string(k));
  }

  std::vector<std::pair<std::string, LabelTally>> order(by_project.begin(), by_project.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second.total > b.second.total;  // map order already sorts ties by name
  });

  const PerLabel<double> global = global_proportions(examples);
  const std::size_t base = order.size() / k;
  const std::size_t extra = order.size() % k;

  std::vector<LabelTally> folds(k);
  std::vector<std::size_t> members(k, 0);
  std::size_t at_ceiling = 0;
  std::vector<std::size_t> fold_of(order.size(), 0);

  FoldAssignment out;
  out.k = k;
  out.seed = seed;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const LabelTally& tally = order[i].second;
    std::size_t best = k;
    double best_deviation = 0.0;
    for (std::size_t f = 0; f < k; ++f) {
      const bool open = members[f] < base || (members[f] == base && at_ceiling < extra);
      if (!open) continue;
      LabelTally candidate = folds[f];
      candidate.add(tally);
      const double deviation = l1_deviation(candidate, global);
      const bool better =
          best == k || deviation < best_deviation - 1e-12 ||
          (std::abs(deviation - best_deviation) <= 1e-12 && folds[f].total < folds[best].total);
      if (better) {
        best = f;
        best_deviation = deviation;
      }
    }
    folds[best].add(tally);
    if (++members[best] == base + 1) ++at_ceiling;
    fold_of[i] = best;
  }
  refine(order, fold_of, folds, members, base, global);
  for (std::size_t i = 0; i < order.size(); ++i) out.fold_of_project.emplace(order[i].first, fold_of[i]);
  return out;
}

FoldSplit fold_split(std::span<const LabeledExample> examples, const FoldAssignment& folds,
                     std::size_t fold) {
  FoldSplit out;
  for (const auto& e : examples) {
    const auto it = folds.fold_of_project.find(e.project);
    if (it == folds.fold_of_project.end()) {
      throw Error(ErrorCode::InvalidArgument, "project '" + e.project + "' has no fold");
    }
    (it->second == fold ? out.test : out.train).push_back(e);
  }
  return out;
}

std::vector<double> fold_label_deviation(std::span<const LabeledExample> examples,
                                         const FoldAssignment& folds) {
  std::vector<LabelTally> tallies(folds.k);
  for (const auto& e : examples) {
    auto& t = tallies.at(folds.fold_of_project.at(e.project));
    t.counts[index_of(e.label)] += 1.0;
    t.total += 1.0;
  }
  const PerLabel<double> global = global_proportions(examples);
  std::vector<double> out;
  for (const auto& t : tallies) out.push_back(l1_deviation(t, global));
  return out;
}

AugmentResult augment_minority(std::span<const LabeledExample> examples, Label target,
                               ParaphraseProvider& provider) {
  AugmentResult out;
  out.examples.assign(examples.begin(), examples.end());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto& source = examples[i];
    if (source.label != target) continue;
    std::string paraphrase;
    try {
      paraphrase = provider.paraphrase(source.text);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ProviderRejectedText) {
        throw Error(ErrorCode::ProviderRejectedText, "example " + std::to_string(i) + ": " + e.what());
      }
      throw;
    }
    auto normalized = normalize(paraphrase);
    if (!normalized || *normalized == source.text) {
      ++out.dropped;
      out.diagnostics.push_back("example " + std::to_string(i) +
                                ": paraphrase identical to source after normalization; dropped");
      continue;
    }
    out.examples.push_back(LabeledExample{source.project, std::move(*normalized), source.label});
    ++out.added;
  }
  return out;
}

}  // namespace satd
