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

#include "namedis/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "namedis/error.hpp"
#include "namedis/rng.hpp"
#include "namedis/textprep.hpp"

namespace namedis {

using nlohmann::json;

Corpus::Corpus(std::vector<BibRecord> records, std::vector<NameInstance> instances)
    : records_(std::move(records)), instances_(std::move(instances)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.authors.empty())
      throw Error(ErrorCode::Integrity, "record " + r.record_id + " has no authors");
    if (!record_index_.emplace(r.record_id, i).second)
      throw Error(ErrorCode::Integrity, "duplicate record_id " + r.record_id);
  }
  std::unordered_set<std::string> ids;
  std::set<std::pair<std::string, std::size_t>> slots;
  for (const auto& inst : instances_) {
    if (!ids.insert(inst.instance_id).second)
      throw Error(ErrorCode::Integrity, "duplicate instance_id " + inst.instance_id);
    const auto it = record_index_.find(inst.record_id);
    if (it == record_index_.end())
      throw Error(ErrorCode::Integrity,
                  "instance " + inst.instance_id + " references unknown record " + inst.record_id);
    if (inst.author_position >= records_[it->second].authors.size())
      throw Error(ErrorCode::Integrity, "instance " + inst.instance_id + " author_position " +
                                            std::to_string(inst.author_position) +
                                            " out of range for record " + inst.record_id);
    if (inst.author_label.empty())
      throw Error(ErrorCode::Integrity, "instance " + inst.instance_id + " has an empty author_label");
    if (!slots.emplace(inst.record_id, inst.author_position).second)
      throw Error(ErrorCode::Integrity, "instance " + inst.instance_id + " duplicates author slot " +
                                            std::to_string(inst.author_position) + " of record " +
                                            inst.record_id);
  }
}

const BibRecord& Corpus::record_of(const NameInstance& inst) const {
  return records_[record_index_.at(inst.record_id)];
}

const std::string& Corpus::focal_name(const NameInstance& inst) const {
  return record_of(inst).authors[inst.author_position];
}

std::size_t Corpus::label_count() const {
  std::unordered_set<std::string> labels;
  for (const auto& inst : instances_) labels.insert(inst.author_label);
  return labels.size();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

const json& require(const json& obj, const char* field, std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end()) parse_fail(line, std::string("missing field \"") + field + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* field, std::size_t line) {
  const auto& v = require(obj, field, line);
  if (!v.is_string()) parse_fail(line, std::string("field \"") + field + "\" must be a string");
  return v.get<std::string>();
}

BibRecord parse_record(const json& obj, std::size_t line) {
  BibRecord r;
  r.record_id = require_string(obj, "record_id", line);
  r.title = require_string(obj, "title", line);
  if (const auto it = obj.find("venue"); it != obj.end() && !it->is_null()) {
    if (!it->is_string()) parse_fail(line, "field \"venue\" must be a string or null");
    r.venue = it->get<std::string>();
  }
  if (const auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) parse_fail(line, "field \"year\" must be an integer or null");
    r.year = it->get<std::int64_t>();
  }
  const auto& authors = require(obj, "authors", line);
  if (!authors.is_array()) parse_fail(line, "field \"authors\" must be an array");
  for (const auto& a : authors) {
    if (!a.is_string()) parse_fail(line, "author names must be strings");
    r.authors.push_back(a.get<std::string>());
  }
  return r;
}

NameInstance parse_instance(const json& obj, std::size_t line) {
  NameInstance inst;
  inst.instance_id = require_string(obj, "instance_id", line);
  inst.record_id = require_string(obj, "record_id", line);
  const auto& pos = require(obj, "author_position", line);
  if (!pos.is_number_integer() || pos.get<std::int64_t>() < 0)
    parse_fail(line, "field \"author_position\" must be a non-negative integer");
  inst.author_position = pos.get<std::size_t>();
  inst.author_label = require_string(obj, "author_label", line);
  return inst;
}

}  // namespace

Corpus load_corpus(std::istream& in) {
  std::vector<BibRecord> records;
  std::vector<NameInstance> instances;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      parse_fail(line, e.what());
    }
    if (!obj.is_object()) parse_fail(line, "expected a JSON object");
    const std::string kind = require_string(obj, "kind", line);
    if (kind == "record") {
      records.push_back(parse_record(obj, line));
    } else if (kind == "instance") {
      instances.push_back(parse_instance(obj, line));
    } else {
      parse_fail(line, "unknown kind \"" + kind + "\"");
    }
  }
  return Corpus(std::move(records), std::move(instances));
}

Corpus load_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus: " + path);
  try {
    return load_corpus(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

Blocking build_blocks(const Corpus& corpus) {
  const auto& instances = corpus.instances();
  std::map<std::string, std::vector<std::size_t>> by_key;
  Blocking out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    try {
      by_key[canonicalize_name(corpus.focal_name(instances[i])).key()].push_back(i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Canonicalization) throw;
      out.rejected.push_back({instances[i].instance_id, e.what()});
    }
  }
  for (auto& [key, members] : by_key) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return instances[a].instance_id < instances[b].instance_id;
    });
    out.blocks.push_back(Block{key, std::move(members)});
  }
  return out;
}

std::vector<Block> filter_blocks(std::vector<Block> blocks, std::size_t min_size) {
  if (min_size < 1) throw Error(ErrorCode::InvalidArgument, "min_size must be at least 1");
  std::erase_if(blocks, [&](const Block& b) { return b.size() < min_size; });
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) { return a.key < b.key; });
  return blocks;
}

SplitAssignment split_train_test(const Corpus& corpus, const Block& block, std::uint64_t seed) {
  const auto& instances = corpus.instances();
  auto by_id = [&](std::size_t a, std::size_t b) {
    return instances[a].instance_id < instances[b].instance_id;
  };
  std::vector<std::size_t> order = block.members;
  std::sort(order.begin(), order.end(), by_id);
  Rng rng(seed);
  rng.shuffle(order);

  SplitAssignment split;
  split.block_key = block.key;
  split.seed = seed;
  const std::size_t n_train = (order.size() + 1) / 2;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(split.train.begin(), split.train.end(), by_id);
  std::sort(split.test.begin(), split.test.end(), by_id);
  return split;
}

}  // namespace namedis
