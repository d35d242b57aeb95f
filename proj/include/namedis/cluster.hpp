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

#include <span>
#include <vector>

#include "namedis/features.hpp"
#include "namedis/learn.hpp"
#include "namedis/metrics.hpp"

namespace namedis {

/// Symmetric n x n matrix with zero diagonal and entries in [0, 1].
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * n_ + j] = value;
    d_[j * n_ + i] = value;
  }

  /// Throws Error(Validation) if not symmetric, zero-diagonal and in range.
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

/// d(i, j) = 1 - P(match) for every pair of profiles.
DistanceMatrix build_distances(std::span<const InstanceProfile> profiles, const TrainedModel& model);

/// Same, from precomputed similarity vectors of the strict upper triangle in
/// row-major order ((0,1), (0,2), ..., (1,2), ...).
DistanceMatrix build_distances(std::size_t n, std::span<const SimilarityVector> upper, const TrainedModel& model);

/// Cluster ids follow the usual linkage-matrix convention: leaves are 0..n-1
/// and the k-th merge creates cluster n + k.
struct Merge {
  int a = 0;
  int b = 0;
  double height = 0.0;
  std::size_t size = 0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Average linkage. Ties on distance go to the pair with the smallest
/// (min id, max id).
Dendrogram hac_average_linkage(const DistanceMatrix& d);

/// Applies merges in order while their height is <= threshold.
Partition cut(const Dendrogram& dendrogram, double threshold);

/// Applies the first leaves - k merges, leaving k clusters (k clamped to
/// [1, leaves]).
Partition cut_to_clusters(const Dendrogram& dendrogram, std::size_t k);

inline constexpr double kTopThresholdEpsilon = 1e-9;

struct ThresholdChoice {
  double threshold = 0.0;
  Partition partition;
  EvalScores scores;
};

/// Tries 0, every merge height and (max height + epsilon); keeps the cut with
/// the highest B-cubed F1, preferring the smallest threshold on ties.
ThresholdChoice best_threshold(const Dendrogram& dendrogram, const Partition& truth);

}  // namespace namedis
