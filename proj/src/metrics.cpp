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

#include "namedis/metrics.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "namedis/error.hpp"

namespace namedis {

template <class Label>
Partition Partition::from_labels(std::span<const Label> labels) {
  Partition p;
  std::map<Label, int> ids;
  p.labels_.reserve(labels.size());
  for (const auto& l : labels) {
    const auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()));
    p.labels_.push_back(it->second);
  }
  p.clusters_ = ids.size();
  return p;
}

template Partition Partition::from_labels(std::span<const int>);
template Partition Partition::from_labels(std::span<const std::string>);
template Partition Partition::from_labels(std::span<const std::size_t>);

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.labels_.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.labels_[i] = static_cast<int>(i);
  p.clusters_ = n;
  return p;
}

Partition Partition::single_cluster(std::size_t n) {
  Partition p;
  p.labels_.assign(n, 0);
  p.clusters_ = n > 0 ? 1 : 0;
  return p;
}

double harmonic_mean(double p, double r) { return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0; }

namespace {

struct Contingency {
  std::vector<double> pred_size;
  std::vector<double> truth_size;
  std::unordered_map<long long, double> cells;  // key = pred * k_truth + truth
  std::size_t truth_clusters = 0;
};

Contingency contingency(const Partition& predicted, const Partition& truth) {
  if (predicted.size() != truth.size())
    throw Error(ErrorCode::Validation, "partitions cover different item sets (" + std::to_string(predicted.size()) +
                                           " vs " + std::to_string(truth.size()) + ")");
  Contingency c;
  c.pred_size.assign(predicted.cluster_count(), 0.0);
  c.truth_size.assign(truth.cluster_count(), 0.0);
  c.truth_clusters = truth.cluster_count();
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    c.pred_size[static_cast<std::size_t>(p)] += 1;
    c.truth_size[static_cast<std::size_t>(t)] += 1;
    c.cells[static_cast<long long>(p) * static_cast<long long>(c.truth_clusters) + t] += 1;
  }
  return c;
}

}  // namespace

EvalScores bcubed(const Partition& predicted, const Partition& truth) {
  const Contingency c = contingency(predicted, truth);
  const double n = static_cast<double>(predicted.size());
  if (n == 0) return {1.0, 1.0, 1.0};
  // Each item in cell (p, t) contributes |cell| / |p| to precision, so the
  // cell as a whole contributes |cell|^2 / |p|.
  double p_sum = 0.0, r_sum = 0.0;
  for (const auto& [key, m] : c.cells) {
    const auto p = static_cast<std::size_t>(key / static_cast<long long>(c.truth_clusters));
    const auto t = static_cast<std::size_t>(key % static_cast<long long>(c.truth_clusters));
    p_sum += m * m / c.pred_size[p];
    r_sum += m * m / c.truth_size[t];
  }
  EvalScores s{p_sum / n, r_sum / n, 0.0};
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

EvalScores pairwise_f(const Partition& predicted, const Partition& truth) {
  const Contingency c = contingency(predicted, truth);
  auto pairs = [](double m) { return m * (m - 1) / 2; };
  double both = 0.0, pred_pairs = 0.0, truth_pairs = 0.0;
  for (const auto& [key, m] : c.cells) both += pairs(m);
  for (double m : c.pred_size) pred_pairs += pairs(m);
  for (double m : c.truth_size) truth_pairs += pairs(m);
  EvalScores s;
  s.precision = pred_pairs > 0 ? both / pred_pairs : 1.0;
  s.recall = truth_pairs > 0 ? both / truth_pairs : 1.0;
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

std::optional<bool> ScoreSummary::stddev_below(double fraction) const {
  if (!stddev) return std::nullopt;
  return *stddev < fraction * mean;
}

ScoreSummary summarize(std::span<const double> values) {
  ScoreSummary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

AggregateRow summarize_group(std::vector<std::string> key, const std::vector<double>& p,
                             const std::vector<double>& r, const std::vector<double>& f) {
  return AggregateRow{std::move(key), summarize(p), summarize(r), summarize(f)};
}

}  // namespace

std::vector<AggregateRow> aggregate(std::span<const RunScore> runs) {
  std::map<std::vector<std::string>, std::size_t> index;
  std::vector<std::vector<std::string>> keys;
  std::vector<std::array<std::vector<double>, 3>> values;
  for (const auto& run : runs) {
    const auto [it, inserted] = index.emplace(run.key, keys.size());
    if (inserted) {
      keys.push_back(run.key);
      values.emplace_back();
    }
    auto& v = values[it->second];
    v[0].push_back(run.scores.precision);
    v[1].push_back(run.scores.recall);
    v[2].push_back(run.scores.f1);
  }
  std::vector<AggregateRow> out;
  out.reserve(keys.size());
  for (std::size_t g = 0; g < keys.size(); ++g)
    out.push_back(summarize_group(std::move(keys[g]), values[g][0], values[g][1], values[g][2]));
  return out;
}

std::vector<AggregateRow> aggregate_means(std::span<const AggregateRow> rows, std::size_t column) {
  std::vector<RunScore> runs;
  runs.reserve(rows.size());
  for (const auto& row : rows) {
    if (column >= row.key.size()) throw Error(ErrorCode::InvalidArgument, "aggregate_means: key column out of range");
    RunScore run;
    run.key = row.key;
    run.key.erase(run.key.begin() + static_cast<std::ptrdiff_t>(column));
    run.scores = {row.precision.mean, row.recall.mean, row.f1.mean};
    runs.push_back(std::move(run));
  }
  return aggregate(runs);
}

}  // namespace namedis
