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

#include "namedis/namedis.h"

#include <cstring>
#include <fstream>
#include <new>
#include <span>
#include <sstream>
#include <string>

#include "namedis/corpus.hpp"
#include "namedis/error.hpp"
#include "namedis/expt.hpp"
#include "namedis/learn.hpp"
#include "namedis/metrics.hpp"
#include "namedis/pairs.hpp"
#include "namedis/report.hpp"
#include "namedis/synth.hpp"
#include "namedis/textprep.hpp"

struct nd_corpus {
  namedis::Corpus corpus;
};

struct nd_model {
  namedis::TrainedModel model;
};

namespace {

thread_local std::string g_last_error;

nd_status to_status(namedis::ErrorCode code) {
  using namedis::ErrorCode;
  switch (code) {
    case ErrorCode::Io: return ND_ERR_IO;
    case ErrorCode::Parse: return ND_ERR_PARSE;
    case ErrorCode::Integrity: return ND_ERR_INTEGRITY;
    case ErrorCode::Validation: return ND_ERR_VALIDATION;
    case ErrorCode::InvalidArgument: return ND_ERR_INVALID_ARGUMENT;
    case ErrorCode::UndefinedRatio: return ND_ERR_UNDEFINED_RATIO;
    case ErrorCode::Canonicalization: return ND_ERR_VALIDATION;
    case ErrorCode::Training: return ND_ERR_TRAINING;
  }
  return ND_ERR_INTERNAL;
}

nd_status fail(nd_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
nd_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    return fn();
  } catch (const namedis::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ND_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ND_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ND_ERR_INTERNAL, "unknown exception");
  }
}

#define ND_REQUIRE(cond, what) \
  if (!(cond)) return fail(ND_ERR_INVALID_ARGUMENT, what)

nd_status copy_out(const std::string& value, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = value.size() + 1;
  if (!buf || capacity < value.size() + 1) return fail(ND_ERR_INVALID_ARGUMENT, "output buffer too small");
  std::memcpy(buf, value.c_str(), value.size() + 1);
  return ND_OK;
}

nd_scores to_c(const namedis::EvalScores& s) { return nd_scores{s.precision, s.recall, s.f1}; }

namespace nd = namedis;

nd::ExperimentConfig to_config(const nd_experiment_config& c, const char* default_ratios) {
  nd::ExperimentConfig config;
  for (size_t i = 0; i < c.data_path_count; ++i) {
    if (!c.data_paths || !c.data_paths[i]) throw nd::Error(nd::ErrorCode::InvalidArgument, "null data path");
    config.data_paths.emplace_back(c.data_paths[i]);
  }
  config.seed = c.seed;
  config.repetitions = c.repetitions;
  config.min_block_size = c.min_block_size;
  config.classifiers.clear();
  if (c.classifiers & ND_CLASSIFIER_LR) config.classifiers.push_back(nd::ModelKind::LogisticRegression);
  if (c.classifiers & ND_CLASSIFIER_NB) config.classifiers.push_back(nd::ModelKind::NaiveBayes);
  if (c.classifiers & ND_CLASSIFIER_RF) config.classifiers.push_back(nd::ModelKind::RandomForest);
  std::string ratios = c.ratios ? c.ratios : "sweep";
  if (default_ratios && ratios == "sweep") ratios = default_ratios;
  config.ratios = nd::RatioSchedule::parse(ratios);
  config.out_dir = c.out_dir ? c.out_dir : "";
  config.threshold_mode = c.threshold_mode == ND_THRESHOLD_TRUTH_CLUSTERS ? nd::ThresholdMode::TruthClusterCount
                                                                          : nd::ThresholdMode::BestF1;
  config.fixed_split = c.fixed_split != 0;
  config.threads = c.threads;
  config.svg = c.svg != 0;
  config.export_partitions = c.export_partitions != 0;
  if (c.log) {
    const nd_log_fn log = c.log;
    void* user = c.log_user;
    config.log = [log, user](std::string_view message) { log(std::string(message).c_str(), user); };
  }
  return config;
}

void fill_summary(const nd::GridResult& grid, nd_run_summary* summary) {
  if (!summary) return;
  *summary = nd_run_summary{};
  summary->blocks = grid.blocks;
  summary->result_rows = grid.rows.size();
  summary->aggregate_rows = grid.aggregates.size();
  summary->skipped = grid.skipped.size();
  summary->rejected = grid.rejected.size();
  for (const auto& row : grid.aggregates) {
    if (const auto flag = row.f1.stddev_below(nd::kRobustStdFraction)) {
      ++summary->std_cells;
      if (*flag) ++summary->robust_cells;
    }
  }
}

}  // namespace

extern "C" {

const char* nd_version(void) { return "0.1.0"; }

const char* nd_last_error(void) { return g_last_error.c_str(); }

const char* nd_status_name(nd_status status) {
  switch (status) {
    case ND_OK: return "ok";
    case ND_ERR_IO: return "io error";
    case ND_ERR_PARSE: return "parse error";
    case ND_ERR_INTEGRITY: return "integrity error";
    case ND_ERR_VALIDATION: return "validation error";
    case ND_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ND_ERR_UNDEFINED_RATIO: return "undefined ratio";
    case ND_ERR_TRAINING: return "training error";
    case ND_EMPTY_RESULT: return "empty result";
    case ND_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

nd_status nd_corpus_load_file(const char* path, nd_corpus** out) {
  return guarded([&] {
    ND_REQUIRE(path && out, "null argument");
    *out = new nd_corpus{namedis::load_corpus_file(path)};
    return ND_OK;
  });
}

nd_status nd_corpus_load_buffer(const char* data, size_t length, nd_corpus** out) {
  return guarded([&] {
    ND_REQUIRE((data || length == 0) && out, "null argument");
    std::istringstream in(std::string(data ? data : "", length));
    *out = new nd_corpus{namedis::load_corpus(in)};
    return ND_OK;
  });
}

void nd_corpus_free(nd_corpus* corpus) { delete corpus; }

nd_status nd_corpus_stats_get(const nd_corpus* corpus, uint64_t min_block_size, nd_corpus_stats* out) {
  return guarded([&] {
    ND_REQUIRE(corpus && out, "null argument");
    const auto& c = corpus->corpus;
    auto blocking = namedis::build_blocks(c);
    const auto kept = namedis::filter_blocks(std::move(blocking.blocks), min_block_size);
    *out = nd_corpus_stats{c.records().size(), c.instances().size(), c.label_count(), kept.size(),
                           blocking.rejected.size()};
    return ND_OK;
  });
}

nd_status nd_canonical_name(const char* raw, char* buf, size_t capacity, size_t* needed) {
  return guarded([&] {
    ND_REQUIRE(raw, "null name");
    return copy_out(namedis::canonicalize_name(raw).key(), buf, capacity, needed);
  });
}

nd_status nd_porter_stem(const char* token, char* buf, size_t capacity, size_t* needed) {
  return guarded([&] {
    ND_REQUIRE(token, "null token");
    return copy_out(namedis::porter_stem(token), buf, capacity, needed);
  });
}

nd_status nd_max_ratio(uint64_t positives, uint64_t negatives, uint64_t* out) {
  return guarded([&] {
    ND_REQUIRE(out, "null output");
    *out = namedis::max_ratio(positives, negatives);
    return ND_OK;
  });
}

nd_status nd_model_train(nd_model_kind kind, uint64_t seed, const double* features, const uint8_t* labels,
                         size_t rows, nd_model** out) {
  return guarded([&] {
    ND_REQUIRE(out && (rows == 0 || (features && labels)), "null argument");
    namedis::ModelSpec spec;
    switch (kind) {
      case ND_MODEL_LOGISTIC_REGRESSION: spec.kind = namedis::ModelKind::LogisticRegression; break;
      case ND_MODEL_NAIVE_BAYES: spec.kind = namedis::ModelKind::NaiveBayes; break;
      case ND_MODEL_RANDOM_FOREST: spec.kind = namedis::ModelKind::RandomForest; break;
      default: return fail(ND_ERR_INVALID_ARGUMENT, "unknown model kind");
    }
    spec.seed = seed;
    namedis::TrainingMatrix data;
    for (size_t i = 0; i < rows; ++i) {
      namedis::SimilarityVector x{};
      std::copy_n(features + i * ND_DIMS, ND_DIMS, x.begin());
      data.add(x, labels[i] != 0);
    }
    *out = new nd_model{namedis::train(spec, data)};
    return ND_OK;
  });
}

nd_status nd_model_predict(const nd_model* model, const double* x, double* probability) {
  return guarded([&] {
    ND_REQUIRE(model && x && probability, "null argument");
    namedis::SimilarityVector v{};
    std::copy_n(x, ND_DIMS, v.begin());
    *probability = model->model.predict_prob(v);
    return ND_OK;
  });
}

nd_status nd_model_to_json(const nd_model* model, char** json) {
  return guarded([&] {
    ND_REQUIRE(model && json, "null argument");
    const std::string text = model->model.to_json();
    char* copy = new char[text.size() + 1];
    std::memcpy(copy, text.c_str(), text.size() + 1);
    *json = copy;
    return ND_OK;
  });
}

nd_status nd_model_from_json(const char* json, nd_model** out) {
  return guarded([&] {
    ND_REQUIRE(json && out, "null argument");
    *out = new nd_model{namedis::TrainedModel::from_json(json)};
    return ND_OK;
  });
}

void nd_model_free(nd_model* model) { delete model; }

void nd_string_free(char* s) { delete[] s; }

nd_status nd_bcubed(const int32_t* predicted, const int32_t* truth, size_t n, nd_scores* out) {
  return guarded([&] {
    ND_REQUIRE(out && (n == 0 || (predicted && truth)), "null argument");
    const auto p = namedis::Partition::from_labels(std::span<const int>(predicted, n));
    const auto t = namedis::Partition::from_labels(std::span<const int>(truth, n));
    *out = to_c(namedis::bcubed(p, t));
    return ND_OK;
  });
}

nd_status nd_pairwise_f(const int32_t* predicted, const int32_t* truth, size_t n, nd_scores* out) {
  return guarded([&] {
    ND_REQUIRE(out && (n == 0 || (predicted && truth)), "null argument");
    const auto p = namedis::Partition::from_labels(std::span<const int>(predicted, n));
    const auto t = namedis::Partition::from_labels(std::span<const int>(truth, n));
    *out = to_c(namedis::pairwise_f(p, t));
    return ND_OK;
  });
}

nd_status nd_eval_partition_files(const char* predicted_csv, const char* truth_csv, nd_scores* bcubed,
                                  nd_scores* pairwise) {
  return guarded([&] {
    ND_REQUIRE(predicted_csv && truth_csv, "null path");
    const auto [p, t] = namedis::align_partitions(namedis::read_partition_csv_file(predicted_csv),
                                                  namedis::read_partition_csv_file(truth_csv));
    if (bcubed) *bcubed = to_c(namedis::bcubed(p, t));
    if (pairwise) *pairwise = to_c(namedis::pairwise_f(p, t));
    return ND_OK;
  });
}

void nd_synth_spec_init(nd_synth_spec* spec) {
  if (!spec) return;
  const namedis::SynthSpec d;
  *spec = nd_synth_spec{d.authors, d.per_author, d.per_author_spread, d.coauthor_pool,
                        d.vocabulary, d.overlap, d.ambiguity, d.seed};
}

nd_status nd_synth_write(const nd_synth_spec* spec, const char* out_path) {
  return guarded([&] {
    ND_REQUIRE(spec && out_path, "null argument");
    namedis::SynthSpec s;
    s.authors = spec->authors;
    s.per_author = spec->per_author;
    s.per_author_spread = spec->per_author_spread;
    s.coauthor_pool = spec->coauthor_pool;
    s.vocabulary = spec->vocabulary;
    s.overlap = spec->overlap;
    s.ambiguity = spec->ambiguity;
    s.seed = spec->seed;
    const namedis::Corpus corpus = namedis::synth_corpus(s);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail(ND_ERR_IO, std::string("cannot write ") + out_path);
    namedis::write_corpus_jsonl(corpus, out);
    if (!out) return fail(ND_ERR_IO, std::string("failed writing ") + out_path);
    return ND_OK;
  });
}

void nd_experiment_config_init(nd_experiment_config* config) {
  if (!config) return;
  *config = nd_experiment_config{};
  config->repetitions = 10;
  config->min_block_size = 100;
  config->classifiers = ND_CLASSIFIER_LR | ND_CLASSIFIER_NB | ND_CLASSIFIER_RF;
  config->ratios = "sweep";
  config->threshold_mode = ND_THRESHOLD_BEST_F1;
}

nd_status nd_run_sweep(const nd_experiment_config* config, nd_run_summary* summary) {
  return guarded([&] {
    ND_REQUIRE(config, "null config");
    const auto grid = namedis::run_sweep(to_config(*config, nullptr));
    fill_summary(grid, summary);
    return grid.blocks == 0 ? fail(ND_EMPTY_RESULT, "no block passed the size filter") : ND_OK;
  });
}

nd_status nd_run_scenarios(const nd_experiment_config* config, nd_run_summary* summary) {
  return guarded([&] {
    ND_REQUIRE(config, "null config");
    const auto result = namedis::run_scenarios(to_config(*config, "1,10,all"));
    fill_summary(result.grid, summary);
    if (summary) summary->scenario_rows = result.scenarios.size();
    return result.grid.blocks == 0 ? fail(ND_EMPTY_RESULT, "no block passed the size filter") : ND_OK;
  });
}

}  // extern "C"
