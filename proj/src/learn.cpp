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

#include "namedis/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "namedis/error.hpp"
#include "namedis/rng.hpp"

namespace namedis {

using nlohmann::json;

std::string_view short_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogisticRegression: return "lr";
    case ModelKind::NaiveBayes: return "nb";
    case ModelKind::RandomForest: return "rf";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "lr") return ModelKind::LogisticRegression;
  if (name == "nb") return ModelKind::NaiveBayes;
  if (name == "rf") return ModelKind::RandomForest;
  throw Error(ErrorCode::InvalidArgument, "unknown classifier \"" + std::string(name) + "\" (expected lr, nb or rf)");
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear(const logistic::Theta& theta, const SimilarityVector& x) {
  double z = theta[kDims];
  for (std::size_t d = 0; d < kDims; ++d) z += theta[d] * x[d];
  return z;
}

void validate(const TrainingMatrix& data) {
  if (data.x.size() != data.y.size())
    throw Error(ErrorCode::Validation, "training matrix rows and labels differ in length");
  if (data.x.empty()) throw Error(ErrorCode::Training, "training matrix is empty");
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    for (double v : data.x[i])
      if (!std::isfinite(v)) throw Error(ErrorCode::Validation, "non-finite feature in row " + std::to_string(i));
    (data.y[i] ? pos : neg) = true;
  }
  if (!pos || !neg) throw Error(ErrorCode::Training, "training data must contain both classes");
}

}  // namespace

namespace logistic {

double objective(const TrainingMatrix& data, const Theta& theta, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double z = linear(theta, data.x[i]);
    loss += data.y[i] ? softplus(-z) : softplus(z);
  }
  double w2 = 0.0;
  for (std::size_t d = 0; d < kDims; ++d) w2 += theta[d] * theta[d];
  return (loss + 0.5 * l2 * w2) / static_cast<double>(data.size());
}

Theta gradient(const TrainingMatrix& data, const Theta& theta, double l2) {
  Theta g{};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = sigmoid(linear(theta, data.x[i])) - data.y[i];
    for (std::size_t d = 0; d < kDims; ++d) g[d] += r * data.x[i][d];
    g[kDims] += r;
  }
  const double n = static_cast<double>(data.size());
  for (std::size_t d = 0; d < kDims; ++d) g[d] = (g[d] + l2 * theta[d]) / n;
  g[kDims] /= n;
  return g;
}

LogisticModel fit(const TrainingMatrix& data, const LogisticParams& params) {
  Theta theta{};
  double step = 1.0;
  int iter = 0;
  double value = objective(data, theta, params.l2);
  for (; iter < params.max_iterations; ++iter) {
    const Theta g = gradient(data, theta, params.l2);
    double gmax = 0.0, g2 = 0.0;
    for (double v : g) {
      gmax = std::max(gmax, std::abs(v));
      g2 += v * v;
    }
    if (gmax < params.gradient_tolerance) break;

    // Armijo backtracking; the accepted step seeds the next search.
    Theta next{};
    double next_value = 0.0;
    for (;;) {
      for (std::size_t d = 0; d < theta.size(); ++d) next[d] = theta[d] - step * g[d];
      next_value = objective(data, next, params.l2);
      if (next_value <= value - 0.5 * step * g2 || step < 1e-12) break;
      step *= 0.5;
    }
    if (next_value > value) break;  // no descent possible at machine precision
    theta = next;
    value = next_value;
    step = std::min(step * 2.0, 1e6);
  }
  LogisticModel model;
  std::copy_n(theta.begin(), kDims, model.weights.begin());
  model.bias = theta[kDims];
  model.iterations = iter;
  return model;
}

}  // namespace logistic

namespace bayes {

GaussianNbModel fit(const TrainingMatrix& data, const NaiveBayesParams& params) {
  const std::size_t n = data.size();
  std::array<double, 2> count{};
  std::array<std::array<double, kDims>, 2> sum{};
  std::array<double, kDims> total_sum{};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = data.y[i];
    count[c] += 1;
    for (std::size_t d = 0; d < kDims; ++d) {
      sum[c][d] += data.x[i][d];
      total_sum[d] += data.x[i][d];
    }
  }
  GaussianNbModel model;
  for (int c = 0; c < 2; ++c)
    for (std::size_t d = 0; d < kDims; ++d) model.mean[c][d] = sum[c][d] / count[c];

  std::array<double, kDims> total_var{};
  for (std::size_t i = 0; i < n; ++i) {
    const int c = data.y[i];
    for (std::size_t d = 0; d < kDims; ++d) {
      const double dc = data.x[i][d] - model.mean[c][d];
      model.variance[c][d] += dc * dc;
      const double dt = data.x[i][d] - total_sum[d] / static_cast<double>(n);
      total_var[d] += dt * dt;
    }
  }
  const double max_var = *std::max_element(total_var.begin(), total_var.end()) / static_cast<double>(n);
  const double floor = max_var > 0 ? params.var_smoothing * max_var : params.var_smoothing;
  for (int c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(count[c] / static_cast<double>(n));
    for (std::size_t d = 0; d < kDims; ++d) model.variance[c][d] = model.variance[c][d] / count[c] + floor;
  }
  return model;
}

std::array<double, 2> posteriors(const GaussianNbModel& model, const SimilarityVector& x) {
  std::array<double, 2> jll{};
  for (int c = 0; c < 2; ++c) {
    double s = model.log_prior[c];
    for (std::size_t d = 0; d < kDims; ++d) {
      const double v = model.variance[c][d];
      const double diff = x[d] - model.mean[c][d];
      s += -0.5 * std::log(2.0 * std::numbers::pi * v) - 0.5 * diff * diff / v;
    }
    jll[c] = s;
  }
  const double delta = jll[0] - jll[1];
  return {sigmoid(delta), sigmoid(-delta)};
}

}  // namespace bayes

double DecisionTree::predict(const SimilarityVector& x) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const auto& node = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right);
  }
  return nodes[i].value;
}

namespace forest {

namespace {

struct Sample {
  std::size_t row;
  double weight;  // bootstrap multiplicity
};

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = -1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingMatrix& data, const ForestParams& params, Rng& rng)
      : data_(data), params_(params), rng_(rng) {}

  DecisionTree build(std::vector<Sample> samples) {
    samples_ = std::move(samples);
    tree_.nodes.clear();
    grow(0, samples_.size(), 0);
    return std::move(tree_);
  }

 private:
  struct Keyed {
    double value;
    std::size_t pos;  // index into samples_
  };

  int grow(std::size_t begin, std::size_t end, int depth) {
    double w = 0.0, wpos = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      w += samples_[i].weight;
      if (data_.y[samples_[i].row]) wpos += samples_[i].weight;
    }
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(TreeNode{-1, 0.0, -1, -1, wpos / w});

    const bool pure = wpos == 0.0 || wpos == w;
    const bool depth_capped = params_.max_depth > 0 && depth >= params_.max_depth;
    const auto count = end - begin;
    if (pure || depth_capped || count < 2 * static_cast<std::size_t>(params_.min_samples_leaf)) return id;

    const Split split = best_split(begin, end, w, wpos);
    if (split.feature < 0) return id;

    const auto f = static_cast<std::size_t>(split.feature);
    const auto mid = std::stable_partition(samples_.begin() + static_cast<std::ptrdiff_t>(begin),
                                           samples_.begin() + static_cast<std::ptrdiff_t>(end),
                                           [&](const Sample& s) { return data_.x[s.row][f] <= split.threshold; });
    const auto split_at = static_cast<std::size_t>(mid - samples_.begin());

    tree_.nodes[static_cast<std::size_t>(id)].feature = split.feature;
    tree_.nodes[static_cast<std::size_t>(id)].threshold = split.threshold;
    const int left = grow(begin, split_at, depth + 1);
    const int right = grow(split_at, end, depth + 1);
    tree_.nodes[static_cast<std::size_t>(id)].left = left;
    tree_.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  // Maximizes sum over children of (pos^2 + neg^2) / weight, which is
  // equivalent to minimizing weighted Gini impurity. Keeps drawing features
  // past max_features until at least one valid split exists.
  Split best_split(std::size_t begin, std::size_t end, double w, double wpos) {
    std::vector<std::size_t> features(kDims);
    std::iota(features.begin(), features.end(), 0);
    rng_.shuffle(features);

    Split best;
    const auto min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);
    std::vector<Keyed> keyed(end - begin);
    for (std::size_t k = 0; k < features.size(); ++k) {
      if (k >= static_cast<std::size_t>(params_.max_features) && best.feature >= 0) break;
      const std::size_t f = features[k];
      for (std::size_t i = begin; i < end; ++i) keyed[i - begin] = {data_.x[samples_[i].row][f], i};
      std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return a.value < b.value || (a.value == b.value && a.pos < b.pos);
      });
      if (keyed.front().value == keyed.back().value) continue;

      double lw = 0.0, lpos = 0.0;
      for (std::size_t i = 0; i + 1 < keyed.size(); ++i) {
        const Sample& s = samples_[keyed[i].pos];
        lw += s.weight;
        if (data_.y[s.row]) lpos += s.weight;
        if (keyed[i].value == keyed[i + 1].value) continue;
        if (i + 1 < min_leaf || keyed.size() - (i + 1) < min_leaf) continue;
        const double rw = w - lw;
        const double rpos = wpos - lpos;
        const double lneg = lw - lpos;
        const double rneg = rw - rpos;
        const double score = (lpos * lpos + lneg * lneg) / lw + (rpos * rpos + rneg * rneg) / rw;
        if (score > best.score) {
          const double a = keyed[i].value;
          const double b = keyed[i + 1].value;
          double t = a + (b - a) / 2.0;
          if (!(t < b) || !std::isfinite(t)) t = a;
          best = Split{static_cast<int>(f), t, score};
        }
      }
    }
    return best;
  }

  const TrainingMatrix& data_;
  const ForestParams& params_;
  Rng& rng_;
  std::vector<Sample> samples_;
  DecisionTree tree_;
};

}  // namespace

ForestModel fit(const TrainingMatrix& data, const ForestParams& params, std::uint64_t seed) {
  if (params.trees < 1 || params.max_features < 1 || params.min_samples_leaf < 1)
    throw Error(ErrorCode::InvalidArgument, "forest parameters out of range");
  ForestModel model;
  model.trees.reserve(static_cast<std::size_t>(params.trees));
  const std::size_t n = data.size();
  std::vector<double> multiplicity(n);
  for (int t = 0; t < params.trees; ++t) {
    Rng rng(derive_seed(seed, "tree", static_cast<std::uint64_t>(t), "rf"));
    std::fill(multiplicity.begin(), multiplicity.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) multiplicity[rng.uniform_index(n)] += 1.0;
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < n; ++i)
      if (multiplicity[i] > 0) samples.push_back({i, multiplicity[i]});
    TreeBuilder builder(data, params, rng);
    model.trees.push_back(builder.build(std::move(samples)));
  }
  return model;
}

}  // namespace forest

ModelKind TrainedModel::kind() const {
  return std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticModel>) return ModelKind::LogisticRegression;
        else if constexpr (std::is_same_v<T, GaussianNbModel>) return ModelKind::NaiveBayes;
        else return ModelKind::RandomForest;
      },
      params_);
}

double TrainedModel::predict_prob(const SimilarityVector& x) const {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          double z = p.bias;
          for (std::size_t d = 0; d < kDims; ++d) z += p.weights[d] * x[d];
          return sigmoid(z);
        } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
          return bayes::posteriors(p, x)[1];
        } else {
          double s = 0.0;
          for (const auto& tree : p.trees) s += tree.predict(x);
          return std::clamp(s / static_cast<double>(p.trees.size()), 0.0, 1.0);
        }
      },
      params_);
}

std::string TrainedModel::to_json() const {
  json doc;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LogisticModel>) {
          doc["kind"] = "logistic_regression";
          doc["weights"] = p.weights;
          doc["bias"] = p.bias;
          doc["iterations"] = p.iterations;
        } else if constexpr (std::is_same_v<T, GaussianNbModel>) {
          doc["kind"] = "naive_bayes";
          doc["log_prior"] = p.log_prior;
          doc["mean"] = p.mean;
          doc["variance"] = p.variance;
        } else {
          doc["kind"] = "random_forest";
          json trees = json::array();
          for (const auto& tree : p.trees) {
            json nodes = json::array();
            for (const auto& n : tree.nodes) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
            trees.push_back(std::move(nodes));
          }
          doc["node_layout"] = {"feature", "threshold", "left", "right", "value"};
          doc["trees"] = std::move(trees);
        }
      },
      params_);
  return doc.dump();
}

TrainedModel TrainedModel::from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "logistic_regression") {
      LogisticModel m;
      m.weights = doc.at("weights").get<std::array<double, kDims>>();
      m.bias = doc.at("bias").get<double>();
      m.iterations = doc.value("iterations", 0);
      return TrainedModel(m);
    }
    if (kind == "naive_bayes") {
      GaussianNbModel m;
      m.log_prior = doc.at("log_prior").get<std::array<double, 2>>();
      m.mean = doc.at("mean").get<std::array<std::array<double, kDims>, 2>>();
      m.variance = doc.at("variance").get<std::array<std::array<double, kDims>, 2>>();
      return TrainedModel(m);
    }
    if (kind == "random_forest") {
      ForestModel m;
      for (const auto& t : doc.at("trees")) {
        DecisionTree tree;
        for (const auto& n : t)
          tree.nodes.push_back(TreeNode{n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                        n.at(3).get<int>(), n.at(4).get<double>()});
        if (tree.nodes.empty()) throw Error(ErrorCode::Parse, "empty tree in model document");
        m.trees.push_back(std::move(tree));
      }
      if (m.trees.empty()) throw Error(ErrorCode::Parse, "forest has no trees");
      return TrainedModel(std::move(m));
    }
    throw Error(ErrorCode::Parse, "unknown model kind \"" + kind + "\"");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("model document: ") + e.what());
  }
}

TrainedModel train(const ModelSpec& spec, const TrainingMatrix& data) {
  validate(data);
  switch (spec.kind) {
    case ModelKind::LogisticRegression: return TrainedModel(logistic::fit(data, spec.logistic));
    case ModelKind::NaiveBayes: return TrainedModel(bayes::fit(data, spec.bayes));
    case ModelKind::RandomForest: return TrainedModel(forest::fit(data, spec.forest, spec.seed));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model kind");
}

}  // namespace namedis
