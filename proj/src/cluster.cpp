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

#include "namedis/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "namedis/error.hpp"

namespace namedis {

void DistanceMatrix::validate() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw Error(ErrorCode::Validation, "distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double v = (*this)(i, j);
      if (v != (*this)(j, i)) throw Error(ErrorCode::Validation, "distance matrix is not symmetric");
      if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::Validation, "distance outside [0, 1]");
    }
  }
}

DistanceMatrix build_distances(std::span<const InstanceProfile> profiles, const TrainedModel& model) {
  DistanceMatrix d(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j)
      d.set(i, j, 1.0 - model.predict_prob(similarity(profiles[i], profiles[j])));
  return d;
}

DistanceMatrix build_distances(std::size_t n, std::span<const SimilarityVector> upper, const TrainedModel& model) {
  if (upper.size() != n * (n - (n > 0 ? 1 : 0)) / 2)
    throw Error(ErrorCode::InvalidArgument, "similarity list does not match matrix size");
  DistanceMatrix d(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, 1.0 - model.predict_prob(upper[k++]));
  return d;
}

Dendrogram hac_average_linkage(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  Dendrogram out;
  out.leaves = n;
  if (n < 2) return out;

  // Slot i holds one live cluster. `sum` keeps the total of all cross-pair
  // distances so averages are recomputed exactly rather than propagated.
  std::vector<double> sum(n * n), avg(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum[i * n + j] = avg[i * n + j] = d(i, j);
  std::vector<std::size_t> size(n, 1);
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), 0);

  out.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    std::pair<int, int> best_ids{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    for (std::size_t x = 0; x < live.size(); ++x) {
      const std::size_t i = live[x];
      for (std::size_t y = x + 1; y < live.size(); ++y) {
        const std::size_t j = live[y];
        const double v = avg[i * n + j];
        if (v > best) continue;
        const std::pair<int, int> ids = std::minmax(id[i], id[j]);
        if (v < best || ids < best_ids) {
          best = v;
          best_ids = ids;
          bi = i;
          bj = j;
        }
      }
    }

    out.merges.push_back(Merge{best_ids.first, best_ids.second, best, size[bi] + size[bj]});
    size[bi] += size[bj];
    id[bi] = static_cast<int>(n + step);
    std::erase(live, bj);
    for (std::size_t k : live) {
      if (k == bi) continue;
      const double s = sum[bi * n + k] + sum[bj * n + k];
      sum[bi * n + k] = sum[k * n + bi] = s;
      avg[bi * n + k] = avg[k * n + bi] = s / static_cast<double>(size[bi] * size[k]);
    }
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Partition after applying the first `count` merges.
Partition apply_prefix(const Dendrogram& dendrogram, std::size_t count) {
  const std::size_t n = dendrogram.leaves;
  // Representative leaf of every cluster id.
  std::vector<std::size_t> leaf_of(n + dendrogram.merges.size());
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), 0);
  DisjointSets sets(n);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& m = dendrogram.merges[k];
    const auto a = leaf_of[static_cast<std::size_t>(m.a)];
    const auto b = leaf_of[static_cast<std::size_t>(m.b)];
    sets.unite(a, b);
    leaf_of[n + k] = a;
  }
  std::vector<std::size_t> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = sets.find(i);
  return Partition::from_labels(std::span<const std::size_t>(roots));
}

std::size_t prefix_length(const Dendrogram& dendrogram, double threshold) {
  std::size_t count = 0;
  while (count < dendrogram.merges.size() && dendrogram.merges[count].height <= threshold) ++count;
  return count;
}

}  // namespace

Partition cut(const Dendrogram& dendrogram, double threshold) {
  return apply_prefix(dendrogram, prefix_length(dendrogram, threshold));
}

Partition cut_to_clusters(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leaves;
  k = std::clamp<std::size_t>(k, n > 0 ? 1 : 0, n);
  return apply_prefix(dendrogram, n - k);
}

ThresholdChoice best_threshold(const Dendrogram& dendrogram, const Partition& truth) {
  if (truth.size() != dendrogram.leaves)
    throw Error(ErrorCode::Validation, "truth labels do not cover the clustered instances");
  std::vector<double> candidates{0.0};
  double top = 0.0;
  for (const auto& m : dendrogram.merges) {
    candidates.push_back(m.height);
    top = std::max(top, m.height);
  }
  candidates.push_back(top + kTopThresholdEpsilon);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ThresholdChoice best;
  bool have = false;
  std::size_t last_prefix = std::numeric_limits<std::size_t>::max();
  for (double t : candidates) {
    const std::size_t prefix = prefix_length(dendrogram, t);
    if (prefix == last_prefix) continue;  // same cut as a smaller threshold
    last_prefix = prefix;
    Partition p = apply_prefix(dendrogram, prefix);
    const EvalScores s = bcubed(p, truth);
    if (!have || s.f1 > best.scores.f1) {
      best = ThresholdChoice{t, std::move(p), s};
      have = true;
    }
  }
  return best;
}

}  // namespace namedis
