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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstring>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "namedis/namedis.h"

namespace fs = std::filesystem;

namespace {

const char* kCorpus =
    R"({"kind":"record","record_id":"r1","title":"Name disambiguation","authors":["J. Lee","H. Zha"]})"
    "\n"
    R"({"kind":"record","record_id":"r2","title":"Author names","authors":["Lee, Jinho"]})"
    "\n"
    R"({"kind":"instance","instance_id":"i1","record_id":"r1","author_position":0,"author_label":"a"})"
    "\n"
    R"({"kind":"instance","instance_id":"i2","record_id":"r1","author_position":1,"author_label":"b"})"
    "\n"
    R"({"kind":"instance","instance_id":"i3","record_id":"r2","author_position":0,"author_label":"a"})"
    "\n";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("namedis-capi-" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(nd_version()) == "0.1.0");
  CHECK(std::string(nd_status_name(ND_OK)) == "ok");
  CHECK(std::string(nd_status_name(ND_EMPTY_RESULT)) == "empty result");
}

TEST_CASE("corpus handles") {
  nd_corpus* corpus = nullptr;
  REQUIRE(nd_corpus_load_buffer(kCorpus, std::strlen(kCorpus), &corpus) == ND_OK);
  nd_corpus_stats stats{};
  REQUIRE(nd_corpus_stats_get(corpus, 1, &stats) == ND_OK);
  CHECK(stats.records == 2);
  CHECK(stats.instances == 3);
  CHECK(stats.labels == 2);
  CHECK(stats.blocks == 2);  // "j lee" and "h zha"
  CHECK(stats.rejected == 0);
  REQUIRE(nd_corpus_stats_get(corpus, 2, &stats) == ND_OK);
  CHECK(stats.blocks == 1);
  nd_corpus_free(corpus);

  const std::string broken = "{\"kind\":\"instance\",\"instance_id\":\"i1\",\"record_id\":\"zz\","
                             "\"author_position\":0,\"author_label\":\"a\"}\n";
  corpus = nullptr;
  CHECK(nd_corpus_load_buffer(broken.data(), broken.size(), &corpus) == ND_ERR_INTEGRITY);
  CHECK(corpus == nullptr);
  CHECK(std::string(nd_last_error()).size() > 0);
  CHECK(nd_corpus_load_buffer("{oops", 5, &corpus) == ND_ERR_PARSE);
  CHECK(nd_corpus_load_file("/nonexistent.jsonl", &corpus) == ND_ERR_IO);
  CHECK(nd_corpus_load_file(nullptr, &corpus) == ND_ERR_INVALID_ARGUMENT);
  nd_corpus_free(nullptr);
}

TEST_CASE("text helpers") {
  char buf[32];
  size_t needed = 0;
  REQUIRE(nd_canonical_name("Kim, Jinseok", buf, sizeof buf, &needed) == ND_OK);
  CHECK(std::string(buf) == "j kim");
  CHECK(needed == 6);
  CHECK(nd_canonical_name("Kim, Jinseok", buf, 3, &needed) == ND_ERR_INVALID_ARGUMENT);
  CHECK(needed == 6);
  CHECK(nd_canonical_name("   ", buf, sizeof buf, &needed) != ND_OK);
  REQUIRE(nd_porter_stem("relational", buf, sizeof buf, nullptr) == ND_OK);
  CHECK(std::string(buf) == "relat");
}

TEST_CASE("ratios") {
  uint64_t r = 0;
  REQUIRE(nd_max_ratio(1853, 88672, &r) == ND_OK);
  CHECK(r == 47);
  CHECK(nd_max_ratio(0, 10, &r) == ND_ERR_UNDEFINED_RATIO);
}

TEST_CASE("models") {
  std::vector<double> x;
  std::vector<uint8_t> y;
  for (int i = 0; i < 40; ++i) {
    for (int d = 0; d < ND_DIMS; ++d) x.push_back(i % 2 ? 0.8 + 0.001 * i : 0.1 + 0.001 * i);
    y.push_back(i % 2);
  }
  for (nd_model_kind kind : {ND_MODEL_LOGISTIC_REGRESSION, ND_MODEL_NAIVE_BAYES, ND_MODEL_RANDOM_FOREST}) {
    nd_model* model = nullptr;
    REQUIRE(nd_model_train(kind, 5, x.data(), y.data(), y.size(), &model) == ND_OK);
    const double hi[ND_DIMS] = {0.9, 0.9, 0.9, 0.9, 0.9, 0.9};
    const double lo[ND_DIMS] = {0.05, 0.05, 0.05, 0.05, 0.05, 0.05};
    double p_hi = 0, p_lo = 0;
    REQUIRE(nd_model_predict(model, hi, &p_hi) == ND_OK);
    REQUIRE(nd_model_predict(model, lo, &p_lo) == ND_OK);
    CHECK(p_hi > 0.5);
    CHECK(p_lo < 0.5);

    char* json = nullptr;
    REQUIRE(nd_model_to_json(model, &json) == ND_OK);
    nd_model* copy = nullptr;
    REQUIRE(nd_model_from_json(json, &copy) == ND_OK);
    double p_copy = 0;
    nd_model_predict(copy, hi, &p_copy);
    CHECK(p_copy == p_hi);
    nd_string_free(json);
    nd_model_free(copy);
    nd_model_free(model);
  }
  nd_model* model = nullptr;
  const uint8_t same[2] = {1, 1};
  const double feats[12] = {0};
  CHECK(nd_model_train(ND_MODEL_NAIVE_BAYES, 1, feats, same, 2, &model) == ND_ERR_TRAINING);
  CHECK(nd_model_train(static_cast<nd_model_kind>(9), 1, feats, same, 2, &model) == ND_ERR_INVALID_ARGUMENT);
  CHECK(nd_model_from_json("{}", &model) != ND_OK);
}

TEST_CASE("evaluation") {
  const int32_t pred[4] = {0, 1, 2, 3};
  const int32_t truth[4] = {5, 5, 5, 5};
  nd_scores s{};
  REQUIRE(nd_bcubed(pred, truth, 4, &s) == ND_OK);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 0.25);
  CHECK(std::abs(s.f1 - 0.4) < 1e-15);
  REQUIRE(nd_pairwise_f(pred, truth, 4, &s) == ND_OK);
  CHECK(s.precision == 1.0);
  CHECK(s.recall == 0.0);

  const fs::path p = scratch("pred.csv"), t = scratch("truth.csv");
  std::ofstream(p) << "instance_id,cluster_id\na,1\nb,1\nc,2\n";
  std::ofstream(t) << "instance_id,cluster_id\nc,x\nb,x\na,y\n";
  nd_scores b{}, pw{};
  REQUIRE(nd_eval_partition_files(p.c_str(), t.c_str(), &b, &pw) == ND_OK);
  CHECK(std::abs(b.f1 - 2.0 / 3.0) < 1e-15);
  CHECK(pw.f1 == 0.0);
  std::ofstream(t) << "instance_id,cluster_id\nc,x\n";
  CHECK(nd_eval_partition_files(p.c_str(), t.c_str(), &b, nullptr) == ND_ERR_VALIDATION);
}

TEST_CASE("synth and sweep") {
  nd_synth_spec spec;
  nd_synth_spec_init(&spec);
  spec.authors = 4;
  spec.per_author = 6;
  spec.ambiguity = 4;
  spec.seed = 2;
  const fs::path data = scratch("capi.jsonl");
  REQUIRE(nd_synth_write(&spec, data.c_str()) == ND_OK);
  spec.overlap = 2.0;
  CHECK(nd_synth_write(&spec, data.c_str()) == ND_ERR_INVALID_ARGUMENT);

  const std::string path = data.string();
  const char* paths[] = {path.c_str()};
  std::vector<std::string> log;
  nd_experiment_config config;
  nd_experiment_config_init(&config);
  CHECK(config.repetitions == 10);
  CHECK(config.min_block_size == 100);
  config.data_paths = paths;
  config.data_path_count = 1;
  config.repetitions = 2;
  config.min_block_size = 10;
  config.classifiers = ND_CLASSIFIER_LR | ND_CLASSIFIER_NB;
  config.ratios = "1,all";
  config.threads = 1;
  config.log = [](const char* m, void* u) { static_cast<std::vector<std::string>*>(u)->push_back(m); };
  config.log_user = &log;
  nd_run_summary summary{};
  REQUIRE(nd_run_sweep(&config, &summary) == ND_OK);
  CHECK(summary.blocks == 1);
  CHECK(summary.result_rows == 8);
  CHECK(summary.aggregate_rows == 4);
  CHECK(summary.std_cells == 4);
  CHECK(summary.robust_cells <= summary.std_cells);
  CHECK_FALSE(log.empty());

  config.ratios = nullptr;
  REQUIRE(nd_run_scenarios(&config, &summary) == ND_OK);
  CHECK(summary.scenario_rows == 6);

  config.min_block_size = 1000;
  CHECK(nd_run_sweep(&config, &summary) == ND_EMPTY_RESULT);
  config.ratios = "0";
  CHECK(nd_run_sweep(&config, &summary) == ND_ERR_INVALID_ARGUMENT);
  fs::remove_all(data.parent_path());
}
