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

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "namedis/expt.hpp"
#include "namedis/metrics.hpp"

namespace namedis {

/// Fixed six-decimal rendering used in every CSV.
std::string format_score(double value);

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_timings_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_skipped_csv(std::ostream& out, std::span<const SkipRecord> skipped);
void write_rejected_csv(std::ostream& out, std::span<const Rejection> rejected);

/// Key columns followed by count and mean/std per score, then whether each
/// std is below 2% of its mean (empty when std is undefined).
void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows,
                         std::span<const std::string> key_names);

/// Writes one tidy CSV per (dataset, block, metric) with columns
/// ratio,classifier,mean,std, plus an SVG line chart per file when svg is
/// set. `aggregates` keys are (dataset, block, classifier, ratio). Returns the
/// CSV paths written.
std::vector<std::filesystem::path> emit_plot_data(std::span<const AggregateRow> aggregates,
                                                  const std::filesystem::path& dir, bool svg);

/// Instance ids with cluster labels, as read from or written to
/// `instance_id,cluster_id` CSV.
struct LabeledPartition {
  std::vector<std::string> ids;
  std::vector<std::string> clusters;
};

LabeledPartition read_partition_csv(std::istream& in);
LabeledPartition read_partition_csv_file(const std::string& path);
void write_partition_csv(std::ostream& out, std::span<const std::string> ids, const Partition& partition);

/// Aligns two labeled partitions by instance id. Throws Error(Validation)
/// when the id sets differ or an id repeats.
std::pair<Partition, Partition> align_partitions(const LabeledPartition& predicted, const LabeledPartition& truth);

}  // namespace namedis
