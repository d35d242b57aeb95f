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

#include "namedis/expt.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "namedis/cluster.hpp"
#include "namedis/error.hpp"
#include "namedis/features.hpp"
#include "namedis/report.hpp"
#include "namedis/rng.hpp"

namespace namedis {

namespace fs = std::filesystem;

RatioSchedule RatioSchedule::fixed(std::vector<RatioPlan> plans) {
  if (plans.empty()) throw Error(ErrorCode::InvalidArgument, "ratio list is empty");
  return RatioSchedule(false, std::move(plans));
}

RatioSchedule RatioSchedule::parse(std::string_view text) {
  if (text == "sweep") return sweep();
  std::vector<RatioPlan> plans;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const RatioPlan plan = parse_ratio(item);
    if (std::find(plans.begin(), plans.end(), plan) == plans.end()) plans.push_back(plan);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::sort(plans.begin(), plans.end(),
            [](const RatioPlan& a, const RatioPlan& b) { return ratio_label_less(a.label(), b.label()); });
  return fixed(std::move(plans));
}

std::vector<RatioPlan> RatioSchedule::plans_for(std::uint64_t max_ratio) const {
  if (!sweep_) return plans_;
  std::vector<RatioPlan> plans;
  for (std::uint64_t r = 1; r <= max_ratio; ++r) plans.push_back(RatioPlan::exact(static_cast<std::uint32_t>(r)));
  plans.push_back(RatioPlan::all());
  return plans;
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be at least 1");
  if (min_block_size < 1) throw Error(ErrorCode::InvalidArgument, "min block size must be at least 1");
  if (classifiers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one classifier is required");
  if (data_paths.empty()) throw Error(ErrorCode::InvalidArgument, "no data files given");
}

bool ratio_label_less(std::string_view a, std::string_view b) {
  auto rank = [](std::string_view s) -> std::uint64_t {
    if (s == "all") return UINT64_MAX;
    std::uint64_t v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
  };
  return rank(a) < rank(b);
}

std::vector<Dataset> load_datasets(std::span<const std::string> paths) {
  std::vector<Dataset> out;
  std::set<std::string> names;
  for (const auto& p : paths) {
    std::string name = fs::path(p).stem().string();
    if (!names.insert(name).second)
      throw Error(ErrorCode::InvalidArgument, "two data files share the dataset name \"" + name + "\"");
    out.push_back(Dataset{std::move(name), load_corpus_file(p)});
  }
  return out;
}

namespace {

std::size_t classifier_rank(ModelKind kind, std::span<const ModelKind> order) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), kind) - order.begin());
}

}  // namespace

void sort_rows(std::vector<ResultRow>& rows, std::span<const ModelKind> classifier_order) {
  std::stable_sort(rows.begin(), rows.end(), [&](const ResultRow& a, const ResultRow& b) {
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    if (a.block != b.block) return a.block < b.block;
    const auto ca = classifier_rank(a.classifier, classifier_order);
    const auto cb = classifier_rank(b.classifier, classifier_order);
    if (ca != cb) return ca < cb;
    const auto la = a.ratio.label(), lb = b.ratio.label();
    if (la != lb) return ratio_label_less(la, lb);
    return a.repetition < b.repetition;
  });
}

BlockRun run_block(const Dataset& dataset, const Block& block, const ExperimentConfig& config,
                   std::size_t repetition) {
  using Clock = std::chrono::steady_clock;
  const Corpus& corpus = dataset.corpus;
  const auto& instances = corpus.instances();
  const std::string task_key = dataset.name + "/" + block.key;
  BlockRun run;

  const auto split_rep = config.fixed_split ? 0 : repetition;
  const SplitAssignment split = split_train_test(corpus, block, derive_seed(config.seed, task_key, split_rep, "split"));

  std::vector<InstanceFields> train_fields, test_fields;
  for (auto i : split.train) train_fields.push_back(field_text(corpus, instances[i]));
  for (auto i : split.test) test_fields.push_back(field_text(corpus, instances[i]));
  const IdfSet idf = build_idf_set(train_fields);

  std::vector<PairMember> members;
  for (auto i : split.train) members.push_back({instances[i].instance_id, instances[i].author_label});
  const auto pairs = enumerate_pairs(members);
  std::vector<PairRef> positives, negatives;
  for (const auto& p : pairs) (p.match ? positives : negatives).push_back(p);

  auto skip = [&](std::string reason) {
    if (config.log) config.log("skip " + task_key + " rep " + std::to_string(repetition) + ": " + reason);
    run.skipped.push_back({dataset.name, block.key, repetition, std::move(reason)});
    return run;
  };
  if (positives.empty()) return skip("no positive training pairs");
  if (negatives.empty()) return skip("no negative training pairs");
  run.max_ratio = max_ratio(positives.size(), negatives.size());

  std::vector<InstanceProfile> train_profiles;
  train_profiles.reserve(train_fields.size());
  for (const auto& f : train_fields) train_profiles.push_back(weigh(f, idf));
  auto sim_of = [&](const PairRef& p) { return similarity(train_profiles[p.a], train_profiles[p.b]); };
  std::vector<SimilarityVector> positive_sims, negative_sims;
  positive_sims.reserve(positives.size());
  negative_sims.reserve(negatives.size());
  for (const auto& p : positives) positive_sims.push_back(sim_of(p));
  for (const auto& p : negatives) negative_sims.push_back(sim_of(p));

  std::vector<InstanceProfile> test_profiles;
  for (const auto& f : test_fields) test_profiles.push_back(weigh(f, idf));
  const std::size_t n_test = test_profiles.size();
  std::vector<SimilarityVector> test_sims;
  test_sims.reserve(n_test * (n_test > 0 ? n_test - 1 : 0) / 2);
  for (std::size_t i = 0; i < n_test; ++i)
    for (std::size_t j = i + 1; j < n_test; ++j) test_sims.push_back(similarity(test_profiles[i], test_profiles[j]));
  std::vector<std::string> test_labels, test_ids;
  for (auto i : split.test) {
    test_labels.push_back(instances[i].author_label);
    test_ids.push_back(instances[i].instance_id);
  }
  const Partition truth = Partition::from_labels(std::span<const std::string>(test_labels));

  // One sampling seed for every ratio: smaller samples nest inside larger ones.
  const std::uint64_t negative_seed = derive_seed(config.seed, task_key, repetition, "negatives");
  for (const RatioPlan& plan : config.ratios.plans_for(run.max_ratio)) {
    const auto keep = sample_negative_indices(positives.size(), negatives.size(), plan, negative_seed);
    TrainingMatrix data;
    data.x.reserve(positives.size() + keep.size());
    for (const auto& s : positive_sims) data.add(s, true);
    for (auto k : keep) data.add(negative_sims[k], false);

    for (ModelKind kind : config.classifiers) {
      const auto start = Clock::now();
      ModelSpec spec;
      spec.kind = kind;
      spec.logistic = config.logistic;
      spec.bayes = config.bayes;
      spec.forest = config.forest;
      spec.seed = derive_seed(config.seed, task_key, repetition, "model:" + std::string(short_name(kind)));
      const TrainedModel model = train(spec, data);
      const DistanceMatrix distances = build_distances(n_test, test_sims, model);
      const Dendrogram dendrogram = hac_average_linkage(distances);

      ResultRow row;
      if (config.threshold_mode == ThresholdMode::BestF1) {
        ThresholdChoice choice = best_threshold(dendrogram, truth);
        row.threshold = choice.threshold;
        row.scores = choice.scores;
        if (config.export_partitions) row.predicted = choice.partition.labels();
      } else {
        const std::size_t k = truth.cluster_count();
        const Partition p = cut_to_clusters(dendrogram, k);
        const std::size_t applied = n_test - p.cluster_count();
        row.threshold = applied > 0 ? dendrogram.merges[applied - 1].height : 0.0;
        row.scores = bcubed(p, truth);
        if (config.export_partitions) row.predicted = p.labels();
      }
      row.dataset = dataset.name;
      row.block = block.key;
      row.classifier = kind;
      row.ratio = plan;
      row.repetition = repetition;
      row.train_instances = split.train.size();
      row.test_instances = n_test;
      row.positives = positives.size();
      row.sampled_negatives = keep.size();
      row.available_negatives = negatives.size();
      if (config.export_partitions) row.test_ids = test_ids;
      row.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
      run.rows.push_back(std::move(row));
    }
  }
  return run;
}

namespace {

struct Task {
  std::size_t dataset;
  const Block* block;
  std::size_t repetition;
};

GridResult run_grid(const ExperimentConfig& config) {
  config.validate();
  const std::vector<Dataset> datasets = load_datasets(config.data_paths);

  GridResult result;
  std::vector<std::vector<Block>> blocks(datasets.size());
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    Blocking blocking = build_blocks(datasets[d].corpus);
    for (auto& r : blocking.rejected) {
      if (config.log) config.log("rejected " + datasets[d].name + "/" + r.instance_id + ": " + r.reason);
      r.instance_id = datasets[d].name + "/" + r.instance_id;
      result.rejected.push_back(std::move(r));
    }
    blocks[d] = filter_blocks(std::move(blocking.blocks), config.min_block_size);
    result.blocks += blocks[d].size();
    if (config.log)
      config.log(datasets[d].name + ": " + std::to_string(blocks[d].size()) + " blocks with at least " +
                 std::to_string(config.min_block_size) + " instances");
  }

  std::vector<Task> tasks;
  for (std::size_t d = 0; d < datasets.size(); ++d)
    for (const auto& b : blocks[d])
      for (std::size_t r = 0; r < config.repetitions; ++r) tasks.push_back({d, &b, r});

  std::vector<BlockRun> runs(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        runs[t] = run_block(datasets[tasks[t].dataset], *tasks[t].block, config, tasks[t].repetition);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  for (auto& run : runs) {
    for (auto& row : run.rows) result.rows.push_back(std::move(row));
    for (auto& s : run.skipped) result.skipped.push_back(std::move(s));
  }
  sort_rows(result.rows, config.classifiers);

  std::vector<RunScore> scores;
  scores.reserve(result.rows.size());
  for (const auto& row : result.rows)
    scores.push_back({{row.dataset, row.block, std::string(short_name(row.classifier)), row.ratio.label()}, row.scores});
  result.aggregates = aggregate(scores);
  return result;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  body(out);
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

const std::vector<std::string> kBlockKeyNames{"dataset", "block", "classifier", "ratio"};

void write_grid(const GridResult& grid, const ExperimentConfig& config) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  write_file(dir / "results.csv", [&](std::ostream& o) { write_results_csv(o, grid.rows); });
  write_file(dir / "aggregate.csv", [&](std::ostream& o) { write_aggregate_csv(o, grid.aggregates, kBlockKeyNames); });
  write_file(dir / "timings.csv", [&](std::ostream& o) { write_timings_csv(o, grid.rows); });
  write_file(dir / "skipped.csv", [&](std::ostream& o) { write_skipped_csv(o, grid.skipped); });
  write_file(dir / "rejected.csv", [&](std::ostream& o) { write_rejected_csv(o, grid.rejected); });
  emit_plot_data(grid.aggregates, dir / "plots", config.svg);

  if (config.export_partitions) {
    const fs::path pdir = dir / "partitions";
    fs::create_directories(pdir);
    for (const auto& row : grid.rows) {
      std::string name = row.dataset + "__" + row.block + "__" + std::string(short_name(row.classifier)) + "__" +
                         row.ratio.label() + "__rep" + std::to_string(row.repetition) + ".csv";
      std::replace(name.begin(), name.end(), ' ', '_');
      const Partition p = Partition::from_labels(std::span<const int>(row.predicted));
      write_file(pdir / name, [&](std::ostream& o) { write_partition_csv(o, row.test_ids, p); });
    }
  }
}

}  // namespace

GridResult run_sweep(const ExperimentConfig& config) {
  GridResult grid = run_grid(config);
  if (!config.out_dir.empty()) write_grid(grid, config);
  return grid;
}

ScenarioResult run_scenarios(const ExperimentConfig& config) {
  ScenarioResult result;
  result.grid = run_grid(config);
  result.scenarios = aggregate_means(result.grid.aggregates, 1);
  if (!config.out_dir.empty()) {
    write_grid(result.grid, config);
    const std::vector<std::string> names{"dataset", "classifier", "ratio"};
    write_file(fs::path(config.out_dir) / "scenarios.csv",
               [&](std::ostream& o) { write_aggregate_csv(o, result.scenarios, names); });
  }
  return result;
}

}  // namespace namedis
