/*
 * Copyright 2026 The namedis Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the namedis author-name disambiguation library.
 *
 * Every function returns an nd_status. On failure, nd_last_error() returns a
 * message for the calling thread that stays valid until that thread's next
 * call into the library. Handles are opaque and must be released with the
 * matching *_free function; passing NULL to a *_free function is a no-op.
 */
#ifndef NAMEDIS_NAMEDIS_H
#define NAMEDIS_NAMEDIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NAMEDIS_BUILDING_DLL)
#    define ND_API __declspec(dllexport)
#  else
#    define ND_API __declspec(dllimport)
#  endif
#else
#  define ND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nd_status {
  ND_OK = 0,
  ND_ERR_IO = 1,
  ND_ERR_PARSE = 2,
  ND_ERR_INTEGRITY = 3,
  ND_ERR_VALIDATION = 4,
  ND_ERR_INVALID_ARGUMENT = 5,
  ND_ERR_UNDEFINED_RATIO = 6,
  ND_ERR_TRAINING = 7,
  /* The run completed but no block survived filtering; outputs hold headers only. */
  ND_EMPTY_RESULT = 8,
  ND_ERR_INTERNAL = 99
} nd_status;

ND_API const char* nd_version(void);
ND_API const char* nd_last_error(void);
ND_API const char* nd_status_name(nd_status status);

/* ---- corpus ------------------------------------------------------------ */

typedef struct nd_corpus nd_corpus;

ND_API nd_status nd_corpus_load_file(const char* path, nd_corpus** out);
ND_API nd_status nd_corpus_load_buffer(const char* data, size_t length, nd_corpus** out);
ND_API void nd_corpus_free(nd_corpus* corpus);

typedef struct nd_corpus_stats {
  uint64_t records;
  uint64_t instances;
  uint64_t labels;
  uint64_t blocks;          /* blocks with at least min_block_size instances */
  uint64_t rejected;        /* instances whose focal name has no surname */
} nd_corpus_stats;

ND_API nd_status nd_corpus_stats_get(const nd_corpus* corpus, uint64_t min_block_size, nd_corpus_stats* out);

/* ---- text -------------------------------------------------------------- */

/* Writes "i surname" (or "surname") into buf, NUL-terminated. *needed
 * receives the required size including the terminator; when it exceeds
 * capacity the call fails with ND_ERR_INVALID_ARGUMENT and buf is untouched. */
ND_API nd_status nd_canonical_name(const char* raw, char* buf, size_t capacity, size_t* needed);
ND_API nd_status nd_porter_stem(const char* token, char* buf, size_t capacity, size_t* needed);

/* ---- pairs and ratios -------------------------------------------------- */

ND_API nd_status nd_max_ratio(uint64_t positives, uint64_t negatives, uint64_t* out);

/* ---- classifiers ------------------------------------------------------- */

#define ND_DIMS 6

typedef enum nd_model_kind {
  ND_MODEL_LOGISTIC_REGRESSION = 0,
  ND_MODEL_NAIVE_BAYES = 1,
  ND_MODEL_RANDOM_FOREST = 2
} nd_model_kind;

typedef struct nd_model nd_model;

/* features: rows x ND_DIMS, row-major. labels: 1 = match, 0 = non-match. */
ND_API nd_status nd_model_train(nd_model_kind kind, uint64_t seed, const double* features, const uint8_t* labels,
                                size_t rows, nd_model** out);
ND_API nd_status nd_model_predict(const nd_model* model, const double* x, double* probability);
/* Caller releases *json with nd_string_free. */
ND_API nd_status nd_model_to_json(const nd_model* model, char** json);
ND_API nd_status nd_model_from_json(const char* json, nd_model** out);
ND_API void nd_model_free(nd_model* model);
ND_API void nd_string_free(char* s);

/* ---- evaluation -------------------------------------------------------- */

typedef struct nd_scores {
  double precision;
  double recall;
  double f1;
} nd_scores;

/* Cluster labels for the same n items, any integer ids. */
ND_API nd_status nd_bcubed(const int32_t* predicted, const int32_t* truth, size_t n, nd_scores* out);
ND_API nd_status nd_pairwise_f(const int32_t* predicted, const int32_t* truth, size_t n, nd_scores* out);
/* Reads two `instance_id,cluster_id` CSV files and scores them. */
ND_API nd_status nd_eval_partition_files(const char* predicted_csv, const char* truth_csv, nd_scores* bcubed,
                                         nd_scores* pairwise);

/* ---- synthetic data ---------------------------------------------------- */

typedef struct nd_synth_spec {
  uint64_t authors;
  uint64_t per_author;
  uint64_t per_author_spread;
  uint64_t coauthor_pool;
  uint64_t vocabulary;
  double overlap;
  uint64_t ambiguity;
  uint64_t seed;
} nd_synth_spec;

ND_API void nd_synth_spec_init(nd_synth_spec* spec);
ND_API nd_status nd_synth_write(const nd_synth_spec* spec, const char* out_path);

/* ---- experiments ------------------------------------------------------- */

#define ND_CLASSIFIER_LR 0x1u
#define ND_CLASSIFIER_NB 0x2u
#define ND_CLASSIFIER_RF 0x4u

typedef enum nd_threshold_mode {
  ND_THRESHOLD_BEST_F1 = 0,
  ND_THRESHOLD_TRUTH_CLUSTERS = 1
} nd_threshold_mode;

typedef void (*nd_log_fn)(const char* message, void* user);

typedef struct nd_experiment_config {
  const char* const* data_paths;
  size_t data_path_count;
  uint64_t seed;
  uint64_t repetitions;
  uint64_t min_block_size;
  uint32_t classifiers;      /* ND_CLASSIFIER_* bitmask, run in lr, nb, rf order */
  const char* ratios;        /* "sweep" or a list such as "1,10,all" */
  const char* out_dir;       /* NULL or "" to skip writing files */
  nd_threshold_mode threshold_mode;
  int fixed_split;
  uint32_t threads;          /* 0 = hardware threads */
  int svg;
  int export_partitions;
  nd_log_fn log;
  void* log_user;
} nd_experiment_config;

typedef struct nd_run_summary {
  uint64_t blocks;
  uint64_t result_rows;
  uint64_t aggregate_rows;
  uint64_t scenario_rows;
  uint64_t skipped;
  uint64_t rejected;
  uint64_t robust_cells;     /* bF1 aggregate cells whose std is below 2% of the mean */
  uint64_t std_cells;        /* bF1 aggregate cells with a defined std */
} nd_run_summary;

/* Defaults: seed 0, 10 repetitions, min block size 100, all classifiers,
 * ratios "sweep", best-F1 thresholding. */
ND_API void nd_experiment_config_init(nd_experiment_config* config);
ND_API nd_status nd_run_sweep(const nd_experiment_config* config, nd_run_summary* summary);
/* config->ratios defaults to "1,10,all" when NULL or "sweep". */
ND_API nd_status nd_run_scenarios(const nd_experiment_config* config, nd_run_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* NAMEDIS_NAMEDIS_H */
