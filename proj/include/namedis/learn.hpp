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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "namedis/features.hpp"

namespace namedis {

inline constexpr std::size_t kDims = kChannels;

enum class ModelKind { LogisticRegression, NaiveBayes, RandomForest };

/// Short CLI names: "lr", "nb", "rf".
std::string_view short_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct LogisticParams {
  double l2 = 1.0;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-6;
};

struct NaiveBayesParams {
  double var_smoothing = 1e-9;
};

struct ForestParams {
  int trees = 100;
  int max_features = 2;  // floor(sqrt(6))
  int min_samples_leaf = 1;
  int max_depth = 0;  // 0 = unlimited
};

struct ModelSpec {
  ModelKind kind = ModelKind::LogisticRegression;
  LogisticParams logistic;
  NaiveBayesParams bayes;
  ForestParams forest;
  std::uint64_t seed = 0;
};

struct TrainingMatrix {
  std::vector<SimilarityVector> x;
  std::vector<std::uint8_t> y;  // 1 = match

  std::size_t size() const { return x.size(); }
  void add(const SimilarityVector& row, bool label) {
    x.push_back(row);
    y.push_back(label ? 1 : 0);
  }
};

struct LogisticModel {
  std::array<double, kDims> weights{};
  double bias = 0.0;
  int iterations = 0;
};

struct GaussianNbModel {
  std::array<double, 2> log_prior{};
  std::array<std::array<double, kDims>, 2> mean{};
  std::array<std::array<double, kDims>, 2> variance{};
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // positive fraction at a leaf
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(const SimilarityVector& x) const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
};

/// A fitted classifier. Immutable and safe to share across threads.
class TrainedModel {
 public:
  using Params = std::variant<LogisticModel, GaussianNbModel, ForestModel>;

  explicit TrainedModel(Params params) : params_(std::move(params)) {}

  ModelKind kind() const;
  const Params& params() const { return params_; }

  /// Match probability in [0, 1].
  double predict_prob(const SimilarityVector& x) const;

  /// Self-describing JSON (kind + parameters).
  std::string to_json() const;
  static TrainedModel from_json(std::string_view text);

 private:
  Params params_;
};

/// Throws Error(Training) when a class is missing and Error(Validation) on
/// non-finite features.
TrainedModel train(const ModelSpec& spec, const TrainingMatrix& data);

namespace logistic {

/// Parameter vector: six weights then the bias.
using Theta = std::array<double, kDims + 1>;

/// Mean negative log-likelihood plus l2 / (2n) * |w|^2 (bias unpenalized).
double objective(const TrainingMatrix& data, const Theta& theta, double l2);
Theta gradient(const TrainingMatrix& data, const Theta& theta, double l2);
LogisticModel fit(const TrainingMatrix& data, const LogisticParams& params);

}  // namespace logistic

namespace bayes {

GaussianNbModel fit(const TrainingMatrix& data, const NaiveBayesParams& params);
/// {P(non-match | x), P(match | x)}.
std::array<double, 2> posteriors(const GaussianNbModel& model, const SimilarityVector& x);

}  // namespace bayes

namespace forest {

ForestModel fit(const TrainingMatrix& data, const ForestParams& params, std::uint64_t seed);

}  // namespace forest

double sigmoid(double z);

}  // namespace namedis
