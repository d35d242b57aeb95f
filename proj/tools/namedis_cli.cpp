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

// Command-line front end. Talks to the library only through namedis.h.

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "namedis/namedis.h"

namespace {

constexpr int kExitEmpty = 3;

struct RunOptions {
  std::vector<std::string> data;
  uint64_t seed = 0;
  uint64_t reps = 10;
  uint64_t min_block_size = 100;
  std::string classifiers = "lr,nb,rf";
  std::string ratios = "sweep";
  std::string out;
  std::string threshold_mode = "best-f1";
  bool fixed_split = false;
  uint32_t threads = 0;
  bool svg = false;
  bool export_partitions = false;
  bool quiet = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--data", o.data, "Corpus JSONL file(s)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--reps", o.reps, "Repetitions per block")->check(CLI::PositiveNumber);
  cmd->add_option("--min-block-size", o.min_block_size, "Drop blocks with fewer instances");
  cmd->add_option("--classifiers", o.classifiers, "Comma list of lr, nb, rf");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threshold-mode,--clusters", o.threshold_mode,
                  "best-f1: search the cut height; truth: cut to the test-label cluster count")
      ->check(CLI::IsMember({"best-f1", "truth"}));
  cmd->add_flag("--fixed-split", o.fixed_split, "Keep one train/test split across repetitions");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--svg", o.svg, "Also render SVG charts");
  cmd->add_flag("--export-partitions", o.export_partitions, "Write predicted partitions per run");
  cmd->add_flag("-q,--quiet", o.quiet, "Suppress progress output");
}

uint32_t classifier_mask(const std::string& list) {
  uint32_t mask = 0;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto end = std::min(list.find(',', start), list.size());
    const auto name = list.substr(start, end - start);
    if (name == "lr") mask |= ND_CLASSIFIER_LR;
    else if (name == "nb") mask |= ND_CLASSIFIER_NB;
    else if (name == "rf") mask |= ND_CLASSIFIER_RF;
    else throw CLI::ValidationError("--classifiers", "unknown classifier '" + name + "'");
    start = end + 1;
  }
  return mask;
}

void log_to_stderr(const char* message, void*) { std::fprintf(stderr, "%s\n", message); }

int report_failure(nd_status status) {
  std::fprintf(stderr, "error: %s: %s\n", nd_status_name(status), nd_last_error());
  return status == ND_EMPTY_RESULT ? kExitEmpty : 1;
}

int run_experiment(const RunOptions& o, bool scenarios) {
  std::vector<const char*> paths;
  for (const auto& p : o.data) paths.push_back(p.c_str());

  nd_experiment_config config;
  nd_experiment_config_init(&config);
  config.data_paths = paths.data();
  config.data_path_count = paths.size();
  config.seed = o.seed;
  config.repetitions = o.reps;
  config.min_block_size = o.min_block_size;
  config.classifiers = classifier_mask(o.classifiers);
  config.ratios = o.ratios.c_str();
  config.out_dir = o.out.c_str();
  config.threshold_mode = o.threshold_mode == "truth" ? ND_THRESHOLD_TRUTH_CLUSTERS : ND_THRESHOLD_BEST_F1;
  config.fixed_split = o.fixed_split;
  config.threads = o.threads;
  config.svg = o.svg;
  config.export_partitions = o.export_partitions;
  if (!o.quiet) config.log = log_to_stderr;

  nd_run_summary summary{};
  const nd_status status = scenarios ? nd_run_scenarios(&config, &summary) : nd_run_sweep(&config, &summary);
  if (status == ND_EMPTY_RESULT) {
    std::fprintf(stderr, "warning: no block has at least %llu instances; nothing to run\n",
                 static_cast<unsigned long long>(o.min_block_size));
  }
  if (status != ND_OK) return report_failure(status);

  std::printf("blocks=%llu rows=%llu aggregates=%llu skipped=%llu rejected=%llu\n",
              static_cast<unsigned long long>(summary.blocks), static_cast<unsigned long long>(summary.result_rows),
              static_cast<unsigned long long>(summary.aggregate_rows),
              static_cast<unsigned long long>(summary.skipped), static_cast<unsigned long long>(summary.rejected));
  if (scenarios) std::printf("scenario rows=%llu\n", static_cast<unsigned long long>(summary.scenario_rows));
  std::printf("bF1 std below 2%% of mean: %llu of %llu cells\n",
              static_cast<unsigned long long>(summary.robust_cells), static_cast<unsigned long long>(summary.std_cells));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Author name disambiguation experiments"};
  app.set_version_flag("--version", nd_version());
  app.require_subcommand(1);

  RunOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Per-block sweep over negative:positive training ratios");
  add_run_options(sweep, sweep_opts);
  sweep->add_option("--ratios", sweep_opts.ratios, "'sweep' (1..R plus all) or a list such as 1,5,all");

  RunOptions scen_opts;
  scen_opts.ratios = "1,10,all";
  auto* scen = app.add_subcommand("scenarios", "Compare fixed ratio scenarios across datasets");
  add_run_options(scen, scen_opts);
  scen->add_option("--scenarios", scen_opts.ratios, "Ratio list");

  nd_synth_spec spec;
  nd_synth_spec_init(&spec);
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic labeled corpus");
  synth->add_option("--authors", spec.authors, "Total number of authors")->check(CLI::PositiveNumber);
  synth->add_option("--per-author", spec.per_author, "Instances per author")->check(CLI::PositiveNumber);
  synth->add_option("--per-author-spread", spec.per_author_spread, "Random +/- spread on instances per author");
  synth->add_option("--pool", spec.coauthor_pool, "Private coauthor pool size");
  synth->add_option("--vocabulary", spec.vocabulary, "Private title vocabulary size");
  synth->add_option("--ambiguity", spec.ambiguity, "Authors sharing one focal name (per block)")->check(CLI::PositiveNumber);
  synth->add_option("--overlap", spec.overlap, "Probability a coauthor or title word comes from the shared pool")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output JSONL")->required();

  std::string pred_path, truth_path;
  auto* eval = app.add_subcommand("eval", "Score a predicted partition against the truth");
  eval->add_option("--pred", pred_path, "Predicted partition CSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--truth", truth_path, "Truth partition CSV")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_experiment(sweep_opts, false);
    if (*scen) return run_experiment(scen_opts, true);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  if (*synth) {
    const nd_status status = nd_synth_write(&spec, synth_out.c_str());
    if (status != ND_OK) return report_failure(status);
    return 0;
  }
  nd_scores b{}, p{};
  const nd_status status = nd_eval_partition_files(pred_path.c_str(), truth_path.c_str(), &b, &p);
  if (status != ND_OK) return report_failure(status);
  std::printf("bP=%.6f bR=%.6f bF1=%.6f\n", b.precision, b.recall, b.f1);
  std::printf("pP=%.6f pR=%.6f pF=%.6f\n", p.precision, p.recall, p.f1);
  return 0;
}
