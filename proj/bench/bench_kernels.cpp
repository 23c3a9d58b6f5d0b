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

// Serial reference vs OpenMP kernel for each data-parallel loop. The second
// benchmark argument is the thread count (1 = serial reference).

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>

#include "satd/corpus.hpp"
#include "satd/evaluation.hpp"
#include "satd/ngram.hpp"
#include "satd/preprocess.hpp"
#include "satd/random.hpp"
#include "satd/scan.hpp"

namespace {

namespace fs = std::filesystem;

std::string token(satd::Rng& rng) {
  static const char* words[] = {"todo", "fix",    "the",  "flux",     "solver", "hack", "units",   "test",
                                "grid", "refine", "mesh", "boundary", "later",  "this", "returns", "mean"};
  return words[rng.below(std::size(words))];
}

std::vector<satd::LabeledExample> corpus(std::size_t n, std::size_t projects) {
  satd::Rng rng(1);
  std::vector<satd::LabeledExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text = token(rng);
    for (int w = 0; w < 8; ++w) text += " " + token(rng);
    out.push_back({"p" + std::to_string(i % projects), text, satd::label_at(rng.below(satd::kLabelCount))});
  }
  return out;
}

// A synthetic repository of C files, generated once per process.
const std::vector<satd::SourceFile>& source_files() {
  static const auto files = [] {
    const fs::path root = fs::temp_directory_path() / "satd-bench-repo";
    fs::create_directories(root);
    satd::Rng rng(2);
    for (int f = 0; f < 64; ++f) {
      std::ofstream out(root / ("file" + std::to_string(f) + ".c"));
      for (int line = 0; line < 400; ++line) {
        if (line % 5 == 0) out << "// " << token(rng) << ' ' << token(rng) << ' ' << token(rng) << '\n';
        else if (line % 11 == 0) out << "/* " << token(rng) << "\n   " << token(rng) << " */\n";
        else out << "int v" << line << " = " << line << "; const char* s = \"// not a comment\";\n";
      }
    }
    return satd::list_source_files(root, {});
  }();
  return files;
}

void BM_LexFiles(benchmark::State& state) {
  const auto& files = source_files();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = jobs == 1 ? satd::kernels::lex_files_serial(files, "bench")
                       : satd::kernels::lex_files_parallel(files, "bench", jobs);
    benchmark::DoNotOptimize(r);
  }
}

void BM_Normalize(benchmark::State& state) {
  std::vector<std::string> raw;
  for (const auto& e : corpus(20000, 1)) raw.push_back("// TODO: " + e.text + " 42!!");
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = jobs == 1 ? satd::kernels::normalize_batch_serial(raw, {})
                       : satd::kernels::normalize_batch_parallel(raw, {}, jobs);
    benchmark::DoNotOptimize(r);
  }
}

void BM_Score(benchmark::State& state) {
  const auto data = corpus(20000, 1);
  satd::NgramConfig config;
  config.max_epochs = 1;
  config.require_all_labels = false;
  const auto model = satd::train_ngram(data, {}, config);
  std::vector<std::string> texts;
  for (const auto& e : data) texts.push_back(e.text);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = jobs == 1 ? satd::kernels::score_batch_serial(model, texts)
                       : satd::kernels::score_batch_parallel(model, texts, jobs);
    benchmark::DoNotOptimize(r);
  }
}

void BM_Folds(benchmark::State& state) {
  const auto data = corpus(6000, 10);
  const auto folds = satd::stratified_group_kfold(data, 5, 0);
  satd::TrainableBackend trainable;
  trainable.config.max_epochs = 2;
  trainable.config.require_all_labels = false;
  const satd::Backend backend = trainable;
  satd::CrossProjectOptions options;
  options.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = options.jobs == 1 ? satd::kernels::run_folds_serial(data, folds, backend, options)
                               : satd::kernels::run_folds_parallel(data, folds, backend, options);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_LexFiles)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Normalize)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Score)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Folds)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
