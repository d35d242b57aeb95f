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

#include <doctest.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "namedis/error.hpp"
#include "namedis/learn.hpp"
#include "oracles.hpp"

using namespace namedis;

namespace {

SimilarityVector first_dim(double v) {
  SimilarityVector x{};
  x[0] = v;
  return x;
}

// Positives at 1.0 and negatives at 0.0 on the first dimension.
TrainingMatrix separable_1d(int per_class) {
  TrainingMatrix m;
  for (int i = 0; i < per_class; ++i) {
    m.add(first_dim(1.0), true);
    m.add(first_dim(0.0), false);
  }
  return m;
}

TrainingMatrix random_matrix(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TrainingMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    SimilarityVector x;
    for (auto& v : x) v = u(gen);
    m.add(x, u(gen) < 0.3 + 0.4 * x[0]);
  }
  m.y[0] = 1;
  m.y[1] = 0;
  return m;
}

// Two noisy clusters, positives higher on every dimension.
TrainingMatrix blobs(std::mt19937_64& gen, std::size_t per_class, double sd) {
  std::normal_distribution<double> noise(0.0, sd);
  TrainingMatrix m;
  for (std::size_t i = 0; i < per_class; ++i) {
    SimilarityVector p, q;
    for (std::size_t d = 0; d < kDims; ++d) {
      p[d] = std::clamp(0.7 + noise(gen), 0.0, 1.0);
      q[d] = std::clamp(0.2 + noise(gen), 0.0, 1.0);
    }
    m.add(p, true);
    m.add(q, false);
  }
  return m;
}

ModelSpec spec_for(ModelKind kind, std::uint64_t seed = 3) {
  ModelSpec s;
  s.kind = kind;
  s.seed = seed;
  return s;
}

constexpr ModelKind kAll[] = {ModelKind::LogisticRegression, ModelKind::NaiveBayes, ModelKind::RandomForest};

}  // namespace

TEST_CASE("model kind names") {
  for (auto k : kAll) CHECK(parse_model_kind(short_name(k)) == k);
  CHECK(short_name(ModelKind::RandomForest) == "rf");
  CHECK_THROWS_AS(parse_model_kind("svm"), Error);
}

TEST_CASE("logistic gradient matches central differences") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> w(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const TrainingMatrix data = random_matrix(gen, 40);
    logistic::Theta theta;
    for (auto& t : theta) t = w(gen);
    const auto g = logistic::gradient(data, theta, 1.0);
    double diff = 0, norm_g = 0, norm_n = 0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double h = 1e-5;
      auto plus = theta, minus = theta;
      plus[k] += h;
      minus[k] -= h;
      const double numeric = (oracle::logistic_objective(data, plus, 1.0) -
                              oracle::logistic_objective(data, minus, 1.0)) / (2 * h);
      CHECK(std::abs(g[k] - numeric) <= 1e-9);
      diff += (g[k] - numeric) * (g[k] - numeric);
      norm_g += g[k] * g[k];
      norm_n += numeric * numeric;
    }
    CHECK(std::sqrt(diff) / std::sqrt(std::max(norm_g, norm_n)) <= 1e-5);
    CHECK(logistic::objective(data, theta, 1.0) ==
          doctest::Approx(oracle::logistic_objective(data, theta, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("logistic regression formula") {
  LogisticModel zero;
  TrainedModel m0(zero);
  CHECK(m0.predict_prob(first_dim(0.37)) == 0.5);

  LogisticModel lr;
  lr.weights = {1, 0, 0, 0, 0, 0};
  lr.bias = -0.5;
  SimilarityVector half;
  half.fill(0.5);
  CHECK(TrainedModel(lr).predict_prob(half) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sigmoid(0) == 0.5);
  CHECK(sigmoid(800) == 1.0);
  CHECK(sigmoid(-800) >= 0.0);
}

TEST_CASE("logistic regression on label-independent features stays near the prior") {
  TrainingMatrix m;
  for (int i = 0; i < 40; ++i) {
    SimilarityVector x;
    x.fill((i % 10) / 10.0);
    m.add(x, true);
    m.add(x, false);
  }
  const auto model = logistic::fit(m, {});
  for (double w : model.weights) CHECK(std::abs(w) < 1e-4);
  CHECK(TrainedModel(model).predict_prob(first_dim(0.5)) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("logistic fit reaches a stationary point") {
  std::mt19937_64 gen(8);
  const TrainingMatrix data = random_matrix(gen, 300);
  const auto model = logistic::fit(data, {});
  logistic::Theta theta;
  std::copy(model.weights.begin(), model.weights.end(), theta.begin());
  theta[kDims] = model.bias;
  for (double g : logistic::gradient(data, theta, 1.0)) CHECK(std::abs(g) < 1e-6);
  CHECK(model.iterations < LogisticParams{}.max_iterations);
}

TEST_CASE("naive bayes posteriors") {
  std::mt19937_64 gen(2);
  const TrainingMatrix data = blobs(gen, 50, 0.15);
  const auto model = bayes::fit(data, {});
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    SimilarityVector x;
    for (auto& v : x) v = u(gen);
    const auto post = bayes::posteriors(model, x);
    CHECK(std::abs(post[0] + post[1] - 1.0) <= 1e-12);
    CHECK(post[1] >= 0.0);
    CHECK(post[1] <= 1.0);
  }
}

TEST_CASE("naive bayes with identical classes is indifferent") {
  GaussianNbModel m;
  m.log_prior = {std::log(0.5), std::log(0.5)};
  for (int c = 0; c < 2; ++c) {
    m.mean[c].fill(0.4);
    m.variance[c].fill(0.02);
  }
  for (double v : {0.0, 0.3, 0.9}) CHECK(TrainedModel(m).predict_prob(first_dim(v)) == 0.5);
}

TEST_CASE("naive bayes survives zero-variance features") {
  const TrainingMatrix m = separable_1d(10);  // dims 1..5 are constant 0
  const auto model = bayes::fit(m, {});
  for (const auto& cls : model.variance)
    for (double v : cls) CHECK(v > 0.0);
  CHECK(TrainedModel(model).predict_prob(first_dim(0.9)) > 0.5);
}

TEST_CASE("forest outputs are bounded and reproducible") {
  std::mt19937_64 gen(4);
  const TrainingMatrix data = random_matrix(gen, 200);
  const auto a = train(spec_for(ModelKind::RandomForest, 11), data);
  const auto b = train(spec_for(ModelKind::RandomForest, 11), data);
  const auto c = train(spec_for(ModelKind::RandomForest, 12), data);
  CHECK(std::get<ForestModel>(a.params()).trees.size() == 100);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool seed_matters = false;
  for (int i = 0; i < 300; ++i) {
    SimilarityVector x;
    for (auto& v : x) v = u(gen);
    const double pa = a.predict_prob(x);
    CHECK(pa >= 0.0);
    CHECK(pa <= 1.0);
    CHECK(std::bit_cast<std::uint64_t>(pa) == std::bit_cast<std::uint64_t>(b.predict_prob(x)));
    seed_matters |= pa != c.predict_prob(x);
  }
  CHECK(seed_matters);
}

TEST_CASE("forest of pure positive leaves predicts one") {
  ForestModel f;
  for (int t = 0; t < 3; ++t) f.trees.push_back(DecisionTree{{TreeNode{-1, 0, -1, -1, 1.0}}});
  CHECK(TrainedModel(f).predict_prob(first_dim(0.2)) == 1.0);
}

TEST_CASE("all models are monotone on separable 1-D data") {
  const TrainingMatrix data = separable_1d(50);
  for (auto kind : kAll) {
    const auto model = train(spec_for(kind), data);
    CHECK_MESSAGE(model.predict_prob(first_dim(0.9)) > 0.5, short_name(kind));
    CHECK_MESSAGE(model.predict_prob(first_dim(0.1)) < 0.5, short_name(kind));
  }
}

TEST_CASE("held-out accuracy on separable blobs") {
  std::mt19937_64 gen(21);
  const TrainingMatrix train_set = blobs(gen, 150, 0.1);
  const TrainingMatrix test_set = blobs(gen, 150, 0.1);
  for (auto kind : kAll) {
    const auto model = train(spec_for(kind), train_set);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test_set.size(); ++i)
      correct += (model.predict_prob(test_set.x[i]) > 0.5) == (test_set.y[i] == 1);
    CHECK_MESSAGE(correct >= 0.95 * test_set.size(), short_name(kind));
  }
}

TEST_CASE("training input validation") {
  TrainingMatrix one_class;
  one_class.add(first_dim(0.2), true);
  one_class.add(first_dim(0.4), true);
  for (auto kind : kAll) {
    try {
      train(spec_for(kind), one_class);
      FAIL("expected training error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Training);
    }
  }
  TrainingMatrix bad = separable_1d(3);
  bad.x[1][2] = std::nan("");
  try {
    train(spec_for(ModelKind::NaiveBayes), bad);
    FAIL("expected validation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }
}

TEST_CASE("models round-trip through json") {
  std::mt19937_64 gen(6);
  const TrainingMatrix data = blobs(gen, 40, 0.2);
  for (auto kind : kAll) {
    const auto model = train(spec_for(kind), data);
    const auto back = TrainedModel::from_json(model.to_json());
    CHECK(back.kind() == kind);
    for (std::size_t i = 0; i < data.size(); ++i) CHECK(back.predict_prob(data.x[i]) == model.predict_prob(data.x[i]));
  }
  CHECK_THROWS_AS(TrainedModel::from_json("{\"kind\":\"svm\"}"), Error);
  CHECK_THROWS_AS(TrainedModel::from_json("not json"), Error);
}

TEST_CASE("agreement with an external reference implementation") {
  std::ifstream in(NAMEDIS_TEST_DATA "/sklearn_reference.json");
  REQUIRE(in);
  const auto ref = nlohmann::json::parse(in);
  for (const auto& c : ref.at("cases")) {
    TrainingMatrix data;
    const auto& xs = c.at("x");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      SimilarityVector x;
      for (std::size_t d = 0; d < kDims; ++d) x[d] = xs[i][d].get<double>();
      data.add(x, c.at("y")[i].get<int>() == 1);
    }
    const auto lr = train(spec_for(ModelKind::LogisticRegression), data);
    const auto nb = train(spec_for(ModelKind::NaiveBayes), data);
    // Gradient descent stops at a 1e-6 gradient norm, which pins the
    // optimum's value far more tightly than its location.
    const auto& coef = c.at("lr_coef");
    const auto& w = std::get<LogisticModel>(lr.params());
    logistic::Theta ours, theirs;
    for (std::size_t d = 0; d <= kDims; ++d) {
      ours[d] = d < kDims ? w.weights[d] : w.bias;
      theirs[d] = coef[d].get<double>();
      CHECK(std::abs(ours[d] - theirs[d]) <= 1e-3);
    }
    CHECK(logistic::objective(data, ours, 1.0) <= logistic::objective(data, theirs, 1.0) + 1e-9);
    const auto& probe = c.at("probe");
    for (std::size_t i = 0; i < probe.size(); ++i) {
      SimilarityVector x;
      for (std::size_t d = 0; d < kDims; ++d) x[d] = probe[i][d].get<double>();
      CHECK(std::abs(lr.predict_prob(x) - c.at("lr_prob")[i].get<double>()) <= 1e-4);
      CHECK(std::abs(nb.predict_prob(x) - c.at("nb_prob")[i].get<double>()) <= 1e-9);
    }
  }
}
