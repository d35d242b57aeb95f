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

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace namedis {

struct BibRecord {
  std::string record_id;
  std::string title;
  std::optional<std::string> venue;
  std::optional<std::int64_t> year;
  std::vector<std::string> authors;
};

/// One author mention on one record, with its ground-truth identity.
struct NameInstance {
  std::string instance_id;
  std::string record_id;
  std::size_t author_position = 0;
  std::string author_label;
};

/// Labeled records and name instances with referential integrity checked at
/// construction. Immutable afterwards.
class Corpus {
 public:
  Corpus() = default;
  /// Throws Error(Integrity) on duplicate ids, dangling record references,
  /// out-of-range author positions, empty author lists or empty labels.
  Corpus(std::vector<BibRecord> records, std::vector<NameInstance> instances);

  const std::vector<BibRecord>& records() const { return records_; }
  const std::vector<NameInstance>& instances() const { return instances_; }

  const BibRecord& record_of(const NameInstance& inst) const;
  const std::string& focal_name(const NameInstance& inst) const;
  std::size_t label_count() const;

 private:
  std::vector<BibRecord> records_;
  std::vector<NameInstance> instances_;
  std::unordered_map<std::string, std::size_t> record_index_;
};

/// Reads canonical JSONL: one object per line with "kind" either "record" or
/// "instance". Records and instances may be interleaved in any order.
/// Throws Error(Parse) naming the 1-based line on malformed input.
Corpus load_corpus(std::istream& in);
Corpus load_corpus_file(const std::string& path);

/// Name instances sharing a canonical focal-name key. Members are indices
/// into Corpus::instances(), ordered by instance_id.
struct Block {
  std::string key;
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
};

struct Rejection {
  std::string instance_id;
  std::string reason;
};

struct Blocking {
  std::vector<Block> blocks;  // sorted by key
  std::vector<Rejection> rejected;
};

Blocking build_blocks(const Corpus& corpus);

/// Blocks with at least min_size members, in key order. min_size >= 1.
std::vector<Block> filter_blocks(std::vector<Block> blocks, std::size_t min_size);

struct SplitAssignment {
  std::string block_key;
  std::vector<std::size_t> train;  // ordered by instance_id
  std::vector<std::size_t> test;   // ordered by instance_id
  std::uint64_t seed = 0;
};

/// Uniform random halving; the odd instance goes to train.
SplitAssignment split_train_test(const Corpus& corpus, const Block& block, std::uint64_t seed);

}  // namespace namedis
