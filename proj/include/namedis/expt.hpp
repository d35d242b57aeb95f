// Copyright 2026 The namedis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "namedis/corpus.hpp"
#include "namedis/learn.hpp"
#include "namedis/metrics.hpp"
#include "namedis/pairs.hpp"

namespace namedis {

enum class ThresholdMode {
  BestF1,             // search cut heights for the best B-cubed F1 on test labels
  TruthClusterCount,  // cut to the number of distinct test labels
};

/// Which training ratios a block is run at.
class RatioSchedule {
 public:
  /// 1:1 .. 1:R for the block's own R, then all negatives.
  static RatioSchedule sweep() { return RatioSchedule(true, {}); }
  static RatioSchedule fixed(std::vector<RatioPlan> plans);
  /// "sweep" or a comma list such as "1,10,all".
  static RatioSchedule parse(std::string_view text);

  bool is_sweep() const { return sweep_; }
  const std::vector<RatioPlan>& plans() const { return plans_; }
  std::vector<RatioPlan> plans_for(std::uint64_t max_ratio) const;

 private:
  RatioSchedule(bool sweep, std::vector<RatioPlan> plans) : sweep_(sweep), plans_(std::move(plans)) {}
  bool sweep_;
  std::vector<RatioPlan> plans_;
};

struct ExperimentConfig {
  std::vector<std::string> data_paths;
  std::uint64_t seed = 0;
  std::size_t repetitions = 10;
  std::size_t min_block_size = 100;
  std::vector<ModelKind> classifiers{ModelKind::LogisticRegression, ModelKind::NaiveBayes, ModelKind::RandomForest};
  RatioSchedule ratios = RatioSchedule::sweep();
  std::string out_dir;
  ThresholdMode threshold_mode = ThresholdMode::BestF1;
  /// Reuse the repetition-0 split for every repetition so that only negative
  /// sampling varies.
  bool fixed_split = false;
  /// Worker threads for the block x repetition grid; 0 = hardware threads.
  std::size_t threads = 0;
  bool svg = false;
  bool export_partitions = false;
  LogisticParams logistic;
  NaiveBayesParams bayes;
  ForestParams forest;
  /// Progress and skip messages. May be called from worker threads.
  std::function<void(std::string_view)> log;

  void validate() const;
};

struct Dataset {
  std::string name;
  Corpus corpus;
};

/// Dataset name = file stem. Throws Error(Io/Parse/Integrity) before any work.
std::vector<Dataset> load_datasets(std::span<const std::string> paths);

struct ResultRow {
  std::string dataset;
  std::string block;
  ModelKind classifier = ModelKind::LogisticRegression;
  RatioPlan ratio;
  std::size_t repetition = 0;
  EvalScores scores;
  std::size_t train_instances = 0;
  std::size_t test_instances = 0;
  std::size_t positives = 0;
  std::size_t sampled_negatives = 0;
  std::size_t available_negatives = 0;
  double threshold = 0.0;
  double wall_seconds = 0.0;
  /// Filled when ExperimentConfig::export_partitions is set.
  std::vector<std::string> test_ids;
  std::vector<int> predicted;
};

struct SkipRecord {
  std::string dataset;
  std::string block;
  std::size_t repetition = 0;
  std::string reason;
};

struct BlockRun {
  std::vector<ResultRow> rows;
  std::vector<SkipRecord> skipped;
  std::uint64_t max_ratio = 0;
};

/// Split, featurize, sample at each ratio, train each classifier, cluster the
/// test half and score it. Training halves without positive or negative pairs
/// are skipped with a reason.
BlockRun run_block(const Dataset& dataset, const Block& block, const ExperimentConfig& config,
                   std::size_t repetition);

struct GridResult {
  std::vector<ResultRow> rows;          // sorted
  std::vector<AggregateRow> aggregates;  // key: dataset, block, classifier, ratio
  std::vector<SkipRecord> skipped;
  std::vector<Rejection> rejected;
  std::size_t blocks = 0;
};

struct ScenarioResult {
  GridResult grid;
  std::vector<AggregateRow> scenarios;  // key: dataset, classifier, ratio
};

/// Runs the grid with config.ratios and writes results.csv, aggregate.csv,
/// timings.csv, skipped.csv and plots/ under config.out_dir (when set).
GridResult run_sweep(const ExperimentConfig& config);

/// Same grid with the scenario ratios, plus scenarios.csv: per-block means
/// averaged with equal block weight.
ScenarioResult run_scenarios(const ExperimentConfig& config);

inline constexpr double kRobustStdFraction = 0.02;

/// Orders rows by dataset, block, classifier (config order), ratio, repetition.
void sort_rows(std::vector<ResultRow>& rows, std::span<const ModelKind> classifier_order);

/// Numeric ratios ascending, then "all".
bool ratio_label_less(std::string_view a, std::string_view b);

}  // namespace namedis
