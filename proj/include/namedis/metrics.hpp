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

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace namedis {

/// Hard clustering of n items: labels[i] is the cluster of item i. Cluster
/// ids are dense, numbered in order of first appearance.
class Partition {
 public:
  Partition() = default;

  /// Renumbers arbitrary ids densely.
  template <class Label>
  static Partition from_labels(std::span<const Label> labels);
  static Partition singletons(std::size_t n);
  static Partition single_cluster(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t cluster_count() const { return clusters_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> labels_;
  std::size_t clusters_ = 0;
};

struct EvalScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// 2pr / (p + r), or 0 when p + r == 0.
double harmonic_mean(double p, double r);

/// B-cubed precision, recall and F1 over items. Throws Error(Validation) when
/// the partitions cover different numbers of items.
EvalScores bcubed(const Partition& predicted, const Partition& truth);

/// Precision and recall over same-cluster pairs. With no predicted pairs,
/// precision is 1; with no true pairs, recall is 1.
EvalScores pairwise_f(const Partition& predicted, const Partition& truth);

struct ScoreSummary {
  std::size_t count = 0;
  double mean = 0.0;
  std::optional<double> stddev;  // sample (n-1) deviation, absent when count < 2

  /// Whether stddev < fraction * mean; absent when stddev is.
  std::optional<bool> stddev_below(double fraction) const;
};

ScoreSummary summarize(std::span<const double> values);

/// One evaluated run tagged with its group key (e.g. dataset, block,
/// classifier, ratio).
struct RunScore {
  std::vector<std::string> key;
  EvalScores scores;
};

struct AggregateRow {
  std::vector<std::string> key;
  ScoreSummary precision;
  ScoreSummary recall;
  ScoreSummary f1;
};

/// Mean and sample deviation per distinct key, groups in order of first
/// appearance.
std::vector<AggregateRow> aggregate(std::span<const RunScore> runs);

/// Second-level aggregation: drops key column `column` and averages the
/// per-group means with equal weight (e.g. per-block means into a
/// per-dataset mean).
std::vector<AggregateRow> aggregate_means(std::span<const AggregateRow> rows, std::size_t column);

}  // namespace namedis
