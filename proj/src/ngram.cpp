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

#include "satd/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "satd/error.hpp"
#include "satd/random.hpp"
#include "satd/scan.hpp"

namespace satd {

namespace {

constexpr std::string_view kFormatName = "satdscan-ngram";
constexpr int kFormatVersion = 1;

std::vector<std::string> tokens(const std::string& text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find(' ', begin);
    if (end == std::string::npos) end = text.size();
    if (end > begin) out.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

void check_orders(std::span<const int> orders) {
  if (orders.empty()) throw Error(ErrorCode::InvalidArgument, "no n-gram orders");
  for (int n : orders) {
    if (n != 1 && n != 2) throw Error(ErrorCode::InvalidArgument, "n-gram orders must be 1 or 2");
  }
}

PerLabel<double> softmax(const PerLabel<double>& z) {
  const double peak = *std::max_element(z.begin(), z.end());
  PerLabel<double> p{};
  double sum = 0.0;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    p[l] = std::exp(z[l] - peak);
    sum += p[l];
  }
  for (auto& v : p) v /= sum;
  return p;
}

double log_sum_exp(const PerLabel<double>& z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

struct Encoded {
  SparseFeatures x;
  std::size_t label;
};

std::vector<Encoded> encode(const NgramModel& model, std::span<const LabeledExample> examples) {
  std::vector<Encoded> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(Encoded{model.features(e.text), index_of(e.label)});
  return out;
}

double mean_loss(const NgramModel& model, const std::vector<Encoded>& data) {
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (const auto& e : data) {
    const auto z = model.logits(e.x);
    total += log_sum_exp(z) - z[e.label];
  }
  return total / static_cast<double>(data.size());
}

// Accumulates the mean-loss gradient of `batch` into dense buffers.
void accumulate_gradient(const NgramModel& model, const std::vector<Encoded>& data,
                         std::span<const std::size_t> batch, std::vector<double>& dw, PerLabel<double>& db) {
  const std::size_t features = model.num_features();
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i : batch) {
    const auto& e = data[i];
    PerLabel<double> dz = softmax(model.logits(e.x));
    dz[e.label] -= 1.0;
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      const double g = dz[l] * scale;
      db[l] += g;
      double* row = dw.data() + l * features;
      for (const auto& [f, count] : e.x) row[f] += g * count;
    }
  }
}

}  // namespace

std::vector<std::string> ngrams(const std::string& text, std::span<const int> orders) {
  const auto toks = tokens(text);
  std::vector<std::string> out;
  for (int n : orders) {
    if (n == 1) {
      out.insert(out.end(), toks.begin(), toks.end());
    } else if (n == 2) {
      for (std::size_t i = 0; i + 1 < toks.size(); ++i) out.push_back(toks[i] + " " + toks[i + 1]);
    }
  }
  return out;
}

NgramModel::NgramModel(std::vector<std::string> vocabulary, std::vector<int> orders)
    : vocabulary_(std::move(vocabulary)), orders_(std::move(orders)) {
  check_orders(orders_);
  weights_.assign(kLabelCount * vocabulary_.size(), 0.0);
  rebuild_index();
}

void NgramModel::rebuild_index() {
  index_.clear();
  index_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::MalformedModel, "duplicate vocabulary entry '" + vocabulary_[i] + "'");
    }
  }
}

void NgramModel::randomize(std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (auto& w : weights_) w = (2.0 * rng.uniform() - 1.0) * scale;
  for (auto& b : bias_) b = (2.0 * rng.uniform() - 1.0) * scale;
}

SparseFeatures NgramModel::features(const std::string& text) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& gram : ngrams(text, orders_)) {
    if (auto it = index_.find(gram); it != index_.end()) counts[it->second] += 1.0;
  }
  return SparseFeatures(counts.begin(), counts.end());
}

PerLabel<double> NgramModel::logits(const SparseFeatures& x) const {
  PerLabel<double> z = bias_;
  const std::size_t features = vocabulary_.size();
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    const double* row = weights_.data() + l * features;
    for (const auto& [f, count] : x) z[l] += row[f] * count;
  }
  return z;
}

PerLabel<double> NgramModel::probabilities(const std::string& text) const {
  return softmax(logits(features(text)));
}

std::vector<Classification> NgramModel::classify(std::span<const std::string> texts) const {
  const int jobs = resolve_jobs(jobs_);
  return jobs == 1 ? kernels::score_batch_serial(*this, texts)
                   : kernels::score_batch_parallel(*this, texts, jobs);
}

std::string NgramModel::describe() const {
  return "ngram(" + std::to_string(vocabulary_.size()) + " features)";
}

namespace kernels {

std::vector<Classification> score_batch_serial(const NgramModel& model, std::span<const std::string> texts) {
  std::vector<Classification> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(make_classification(model.probabilities(text)));
  return out;
}

std::vector<Classification> score_batch_parallel(const NgramModel& model, std::span<const std::string> texts,
                                                 int jobs) {
  std::vector<Classification> out(texts.size());
  const auto n = static_cast<std::ptrdiff_t>(texts.size());
#pragma omp parallel for schedule(static) num_threads(resolve_jobs(jobs))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = make_classification(model.probabilities(texts[k]));
  }
  return out;
}

}  // namespace kernels

std::string NgramModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  auto& labels = j["labels"] = nlohmann::json::array();
  for (Label l : kAllLabels) labels.push_back(wire_name(l));
  j["ngram_orders"] = orders_;
  j["vocabulary"] = vocabulary_;
  auto& rows = j["weights"] = nlohmann::json::array();
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    const auto first = weights_.begin() + static_cast<std::ptrdiff_t>(l * vocabulary_.size());
    rows.push_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(vocabulary_.size())));
  }
  j["bias"] = bias_;
  j["training_meta"] = {
      {"seed", meta_.seed},
      {"learning_rate", meta_.learning_rate},
      {"weight_decay", meta_.weight_decay},
      {"batch_size", meta_.batch_size},
      {"max_epochs", meta_.max_epochs},
      {"epochs_run", meta_.epochs_run},
      {"best_epoch", meta_.best_epoch},
      {"train_loss", meta_.train_loss},
      {"validation_loss", meta_.validation_loss},
  };
  return j.dump();
}

NgramModel NgramModel::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorCode::MalformedModel, "unknown format");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw Error(ErrorCode::MalformedModel, "unsupported version " + j.at("version").dump());
    }
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    if (labels.size() != kLabelCount) throw Error(ErrorCode::MalformedModel, "label order mismatch");
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      if (labels[l] != wire_name(label_at(l))) throw Error(ErrorCode::MalformedModel, "label order mismatch");
    }
    NgramModel model(j.at("vocabulary").get<std::vector<std::string>>(),
                     j.at("ngram_orders").get<std::vector<int>>());
    const auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
    if (rows.size() != kLabelCount) throw Error(ErrorCode::MalformedModel, "weights need 6 rows");
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      if (rows[l].size() != model.num_features()) throw Error(ErrorCode::MalformedModel, "weight row size");
      std::copy(rows[l].begin(), rows[l].end(),
                model.weights_.begin() + static_cast<std::ptrdiff_t>(l * model.num_features()));
    }
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (bias.size() != kLabelCount) throw Error(ErrorCode::MalformedModel, "bias needs 6 entries");
    std::copy(bias.begin(), bias.end(), model.bias_.begin());
    for (double w : model.weights_) {
      if (!std::isfinite(w)) throw Error(ErrorCode::MalformedModel, "non-finite weight");
    }
    const auto& m = j.at("training_meta");
    model.meta_.seed = m.at("seed").get<std::uint64_t>();
    model.meta_.learning_rate = m.at("learning_rate").get<double>();
    model.meta_.weight_decay = m.at("weight_decay").get<double>();
    model.meta_.batch_size = m.at("batch_size").get<std::size_t>();
    model.meta_.max_epochs = m.at("max_epochs").get<std::size_t>();
    model.meta_.epochs_run = m.at("epochs_run").get<std::size_t>();
    model.meta_.best_epoch = m.at("best_epoch").get<std::size_t>();
    model.meta_.train_loss = m.at("train_loss").get<std::vector<double>>();
    model.meta_.validation_loss = m.at("validation_loss").get<std::vector<double>>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedModel, e.what());
  }
}

void NgramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write model " + path.string());
  out << to_json() << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing model " + path.string());
}

NgramModel NgramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read model " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

std::vector<std::string> build_vocabulary(std::span<const LabeledExample> train, std::span<const int> orders,
                                          std::size_t min_count) {
  check_orders(orders);
  std::map<std::string, std::size_t> counts;
  for (const auto& e : train) {
    for (auto& gram : ngrams(e.text, orders)) ++counts[std::move(gram)];
  }
  std::vector<std::string> vocabulary;
  for (const auto& [gram, count] : counts) {
    if (count >= min_count) vocabulary.push_back(gram);
  }
  return vocabulary;
}

NgramModel train_ngram(std::span<const LabeledExample> train, std::span<const LabeledExample> validation,
                       const NgramConfig& config) {
  if (train.empty()) throw Error(ErrorCode::EmptyCorpus, "training split is empty");
  if (config.batch_size == 0 || config.max_epochs == 0) {
    throw Error(ErrorCode::InvalidArgument, "batch_size and max_epochs must be positive");
  }
  if (config.require_all_labels) {
    const auto summary = DatasetSummary::of(train);
    for (Label l : kAllLabels) {
      if (summary.counts[index_of(l)] == 0) {
        throw Error(ErrorCode::MissingLabelInTrain, std::string(wire_name(l)));
      }
    }
  }
  const bool all_identical = std::all_of(train.begin(), train.end(),
                                         [&](const LabeledExample& e) { return e.text == train.front().text; });
  if (all_identical) throw Error(ErrorCode::DegenerateData, "all training texts are identical");

  NgramModel model(build_vocabulary(train, config.ngram_orders, config.min_count), config.ngram_orders);
  const auto train_data = encode(model, train);
  const auto validation_data = encode(model, validation);

  const std::size_t params = model.raw_weights().size();
  std::vector<double> m_w(params, 0.0), v_w(params, 0.0), dw(params, 0.0);
  PerLabel<double> m_b{}, v_b{}, db{};
  constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::size_t step = 0;

  TrainingMeta meta;
  meta.seed = config.seed;
  meta.learning_rate = config.learning_rate;
  meta.weight_decay = config.weight_decay;
  meta.batch_size = config.batch_size;
  meta.max_epochs = config.max_epochs;

  Rng rng(config.seed);
  std::vector<std::size_t> order(train_data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::vector<double> best_weights = model.raw_weights();
  PerLabel<double> best_bias = model.raw_bias();
  double best_loss = INFINITY;
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      std::fill(dw.begin(), dw.end(), 0.0);
      db.fill(0.0);
      accumulate_gradient(model, train_data, std::span(order).subspan(begin, end - begin), dw, db);

      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      auto& w = model.raw_weights();
      for (std::size_t i = 0; i < params; ++i) {
        m_w[i] = beta1 * m_w[i] + (1.0 - beta1) * dw[i];
        v_w[i] = beta2 * v_w[i] + (1.0 - beta2) * dw[i] * dw[i];
        w[i] -= config.learning_rate *
                ((m_w[i] / c1) / (std::sqrt(v_w[i] / c2) + eps) + config.weight_decay * w[i]);
      }
      auto& b = model.raw_bias();
      for (std::size_t l = 0; l < kLabelCount; ++l) {
        m_b[l] = beta1 * m_b[l] + (1.0 - beta1) * db[l];
        v_b[l] = beta2 * v_b[l] + (1.0 - beta2) * db[l] * db[l];
        b[l] -= config.learning_rate * (m_b[l] / c1) / (std::sqrt(v_b[l] / c2) + eps);
      }
    }
    meta.epochs_run = epoch;
    meta.train_loss.push_back(mean_loss(model, train_data));
    if (validation_data.empty()) continue;

    const double loss = mean_loss(model, validation_data);
    meta.validation_loss.push_back(loss);
    if (loss < best_loss) {
      best_loss = loss;
      best_weights = model.raw_weights();
      best_bias = model.raw_bias();
      meta.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  if (!validation_data.empty()) {
    model.raw_weights() = std::move(best_weights);
    model.raw_bias() = best_bias;
  }
  model.set_meta(std::move(meta));
  return model;
}

double cross_entropy_loss(const NgramModel& model, std::span<const LabeledExample> batch) {
  return mean_loss(model, encode(model, batch));
}

Gradient cross_entropy_gradient(const NgramModel& model, std::span<const LabeledExample> batch) {
  Gradient g;
  g.weights.assign(model.raw_weights().size(), 0.0);
  if (batch.empty()) return g;
  const auto data = encode(model, batch);
  std::vector<std::size_t> all(data.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  accumulate_gradient(model, data, all, g.weights, g.bias);
  return g;
}

GradientCheckReport evaluate_gradient(const NgramModel& model, std::span<const LabeledExample> batch,
                                      const GradientCheckOptions& options) {
  if (batch.empty() || batch.size() > 8) {
    throw Error(ErrorCode::InvalidArgument, "gradient check takes 1 to 8 examples");
  }
  const Gradient analytic = cross_entropy_gradient(model, batch);
  const std::size_t features = model.num_features();

  // Coordinates the batch can influence: every bias plus each active feature
  // under every label. Coordinate c < 6 is a bias, otherwise a weight offset.
  std::vector<std::size_t> active;
  for (std::size_t l = 0; l < kLabelCount; ++l) active.push_back(l);
  std::vector<std::uint32_t> seen;
  for (const auto& e : batch) {
    for (const auto& [f, count] : model.features(e.text)) seen.push_back(f);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    for (auto f : seen) active.push_back(kLabelCount + l * features + f);
  }

  const double total = static_cast<double>(kLabelCount * (features + 1));
  const auto wanted = static_cast<std::size_t>(std::ceil(options.sample_fraction * total));
  Rng rng(options.seed);
  rng.shuffle(active);
  active.resize(std::min(active.size(), std::max<std::size_t>(1, wanted)));

  NgramModel probe = model;
  GradientCheckReport report;
  report.checked = active.size();
  for (std::size_t c : active) {
    double* slot;
    double a;
    std::string name;
    if (c < kLabelCount) {
      slot = &probe.raw_bias()[c];
      a = analytic.bias[c];
      name = "b[" + std::string(wire_name(label_at(c))) + "]";
    } else {
      const std::size_t offset = c - kLabelCount;
      slot = &probe.raw_weights()[offset];
      a = analytic.weights[offset];
      name = "w[" + std::string(wire_name(label_at(offset / features))) + "][\"" +
             model.vocabulary()[offset % features] + "\"]";
    }
    const double saved = *slot;
    *slot = saved + options.step;
    const double up = cross_entropy_loss(probe, batch);
    *slot = saved - options.step;
    const double down = cross_entropy_loss(probe, batch);
    *slot = saved;
    const double numeric = (up - down) / (2.0 * options.step);
    const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-6});
    if (rel >= report.max_relative_error) {
      report.max_relative_error = rel;
      report.worst_coordinate = name;
      report.worst_analytic = a;
      report.worst_numeric = numeric;
    }
  }
  report.passed = report.max_relative_error <= options.tolerance;
  if (!report.passed) {
    std::ostringstream msg;
    msg << "worst coordinate " << report.worst_coordinate << ": analytic " << report.worst_analytic
        << ", numeric " << report.worst_numeric << ", relative error " << report.max_relative_error
        << " > " << options.tolerance;
    throw Error(ErrorCode::GradientMismatch, msg.str());
  }
  return report;
}

}  // namespace satd
