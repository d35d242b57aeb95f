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

#include "namedis/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>

#include "namedis/error.hpp"

namespace namedis {

namespace fs = std::filesystem;

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

template <class... Fields>
void write_row(std::ostream& out, const Fields&... fields) {
  bool first = true;
  ((out << (first ? "" : ",") << fields, first = false), ...);
  out << '\n';
}

std::string optional_score(const std::optional<double>& v) { return v ? format_score(*v) : std::string(); }

std::string optional_flag(const std::optional<bool>& v) {
  if (!v) return {};
  return *v ? "1" : "0";
}

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "dataset,block,classifier,ratio,repetition,bP,bR,bF1,train_instances,test_instances,positives,"
         "sampled_negatives\n";
  for (const auto& r : rows)
    write_row(out, csv_field(r.dataset), csv_field(r.block), short_name(r.classifier), r.ratio.label(), r.repetition,
              format_score(r.scores.precision), format_score(r.scores.recall), format_score(r.scores.f1),
              r.train_instances, r.test_instances, r.positives, r.sampled_negatives);
}

void write_timings_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "dataset,block,classifier,ratio,repetition,wall_seconds\n";
  for (const auto& r : rows)
    write_row(out, csv_field(r.dataset), csv_field(r.block), short_name(r.classifier), r.ratio.label(), r.repetition,
              format_score(r.wall_seconds));
}

void write_skipped_csv(std::ostream& out, std::span<const SkipRecord> skipped) {
  out << "dataset,block,repetition,reason\n";
  for (const auto& s : skipped)
    write_row(out, csv_field(s.dataset), csv_field(s.block), s.repetition, csv_field(s.reason));
}

void write_rejected_csv(std::ostream& out, std::span<const Rejection> rejected) {
  out << "instance_id,reason\n";
  for (const auto& r : rejected) write_row(out, csv_field(r.instance_id), csv_field(r.reason));
}

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows, std::span<const std::string> key_names) {
  for (const auto& k : key_names) out << k << ',';
  out << "n,bP_mean,bP_std,bR_mean,bR_std,bF1_mean,bF1_std,bP_std_lt_2pct,bR_std_lt_2pct,bF1_std_lt_2pct\n";
  for (const auto& row : rows) {
    for (const auto& k : row.key) out << csv_field(k) << ',';
    write_row(out, row.f1.count, format_score(row.precision.mean), optional_score(row.precision.stddev),
              format_score(row.recall.mean), optional_score(row.recall.stddev), format_score(row.f1.mean),
              optional_score(row.f1.stddev), optional_flag(row.precision.stddev_below(kRobustStdFraction)),
              optional_flag(row.recall.stddev_below(kRobustStdFraction)),
              optional_flag(row.f1.stddev_below(kRobustStdFraction)));
  }
}

namespace {

struct Series {
  std::string classifier;
  std::vector<std::pair<std::string, const ScoreSummary*>> points;  // ratio label -> summary
};

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void write_svg(const fs::path& path, const std::string& title, const std::vector<std::string>& ratios,
               const std::vector<Series>& series) {
  constexpr double width = 640, height = 360, left = 60, right = 130, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto x_at = [&](std::size_t i) {
    return ratios.size() <= 1 ? left + plot_w / 2 : left + plot_w * static_cast<double>(i) / static_cast<double>(ratios.size() - 1);
  };
  auto y_at = [&](double v) { return top + plot_h * (1.0 - std::clamp(v, 0.0, 1.0)); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left,
                top + plot_h, left + plot_w, top + plot_h);
  out << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left, top,
                left, top + plot_h);
  out << buf;
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick * 0.25;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">%.2f</text>\n",
                  left - 6, y_at(v) + 3, v);
    out << buf;
  }
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">",
                  x_at(i), top + plot_h + 16);
    out << buf << "1:" << ratios[i] << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    std::string points;
    for (const auto& [ratio, summary] : series[s].points) {
      const auto i = static_cast<std::size_t>(std::find(ratios.begin(), ratios.end(), ratio) - ratios.begin());
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", x_at(i), y_at(summary->mean));
      points += buf;
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" fill=\"%s\">",
                  left + plot_w + 12, top + 16.0 * static_cast<double>(s + 1), color);
    out << buf << series[s].classifier << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

std::vector<fs::path> emit_plot_data(std::span<const AggregateRow> aggregates, const fs::path& dir, bool svg) {
  // (dataset, block) -> classifier order of appearance, rows
  std::map<std::pair<std::string, std::string>, std::vector<const AggregateRow*>> groups;
  for (const auto& row : aggregates) {
    if (row.key.size() != 4) throw Error(ErrorCode::InvalidArgument, "plot data needs (dataset, block, classifier, ratio) keys");
    groups[{row.key[0], row.key[1]}].push_back(&row);
  }
  std::vector<fs::path> written;
  if (groups.empty()) return written;
  fs::create_directories(dir);

  for (const auto& [group, rows] : groups) {
    std::vector<std::string> classifiers;
    std::vector<std::string> ratios;
    for (const auto* r : rows) {
      if (std::find(classifiers.begin(), classifiers.end(), r->key[2]) == classifiers.end()) classifiers.push_back(r->key[2]);
      if (std::find(ratios.begin(), ratios.end(), r->key[3]) == ratios.end()) ratios.push_back(r->key[3]);
    }
    std::stable_sort(ratios.begin(), ratios.end(), [](const std::string& a, const std::string& b) { return ratio_label_less(a, b); });

    const std::array<std::pair<const char*, const ScoreSummary AggregateRow::*>, 3> metrics{
        {{"bP", &AggregateRow::precision}, {"bR", &AggregateRow::recall}, {"bF1", &AggregateRow::f1}}};
    for (const auto& [metric, member] : metrics) {
      std::string stem = group.first + "__" + group.second + "__" + metric;
      std::replace(stem.begin(), stem.end(), ' ', '_');
      const fs::path csv = dir / (stem + ".csv");
      std::ofstream out(csv, std::ios::binary);
      if (!out) throw Error(ErrorCode::Io, "cannot write " + csv.string());
      out << "ratio,classifier,mean,std\n";
      std::vector<Series> series;
      for (const auto& c : classifiers) series.push_back(Series{c, {}});
      for (const auto& ratio : ratios) {
        for (std::size_t c = 0; c < classifiers.size(); ++c) {
          const auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow* r) {
            return r->key[2] == classifiers[c] && r->key[3] == ratio;
          });
          if (it == rows.end()) continue;
          const ScoreSummary& s = (*it)->*member;
          write_row(out, ratio, classifiers[c], format_score(s.mean), optional_score(s.stddev));
          series[c].points.emplace_back(ratio, &s);
        }
      }
      written.push_back(csv);
      if (svg) write_svg(dir / (stem + ".svg"), group.first + " / " + group.second + " / " + metric, ratios, series);
    }
  }
  return written;
}

LabeledPartition read_partition_csv(std::istream& in) {
  LabeledPartition p;
  std::string line;
  std::size_t n = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) throw Error(ErrorCode::Parse, "partition line " + std::to_string(n) + ": expected 2 fields");
    if (header) {
      header = false;
      if (fields[0] == "instance_id") continue;
    }
    p.ids.push_back(fields[0]);
    p.clusters.push_back(fields[1]);
  }
  return p;
}

LabeledPartition read_partition_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open partition: " + path);
  try {
    return read_partition_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_partition_csv(std::ostream& out, std::span<const std::string> ids, const Partition& partition) {
  if (ids.size() != partition.size()) throw Error(ErrorCode::InvalidArgument, "ids and partition differ in size");
  out << "instance_id,cluster_id\n";
  for (std::size_t i = 0; i < ids.size(); ++i) write_row(out, csv_field(ids[i]), partition[i]);
}

std::pair<Partition, Partition> align_partitions(const LabeledPartition& predicted, const LabeledPartition& truth) {
  std::unordered_map<std::string, std::size_t> truth_at;
  for (std::size_t i = 0; i < truth.ids.size(); ++i)
    if (!truth_at.emplace(truth.ids[i], i).second)
      throw Error(ErrorCode::Validation, "duplicate instance id in truth: " + truth.ids[i]);
  if (predicted.ids.size() != truth.ids.size())
    throw Error(ErrorCode::Validation, "predicted and truth partitions cover different instance sets");
  std::set<std::string> seen;
  std::vector<std::string> pred_labels, truth_labels;
  for (std::size_t i = 0; i < predicted.ids.size(); ++i) {
    const auto it = truth_at.find(predicted.ids[i]);
    if (it == truth_at.end())
      throw Error(ErrorCode::Validation, "instance " + predicted.ids[i] + " is missing from the truth partition");
    if (!seen.insert(predicted.ids[i]).second)
      throw Error(ErrorCode::Validation, "duplicate instance id in prediction: " + predicted.ids[i]);
    pred_labels.push_back(predicted.clusters[i]);
    truth_labels.push_back(truth.clusters[it->second]);
  }
  return {Partition::from_labels(std::span<const std::string>(pred_labels)),
          Partition::from_labels(std::span<const std::string>(truth_labels))};
}

}  // namespace namedis
