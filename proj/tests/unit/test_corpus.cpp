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

#include <algorithm>
#include <set>
#include <sstream>

#include "namedis/corpus.hpp"
#include "namedis/error.hpp"
#include "oracles.hpp"

using namespace namedis;

namespace {

Corpus corpus_with_focal_names(const std::vector<std::string>& names) {
  std::vector<BibRecord> records;
  std::vector<NameInstance> instances;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string rid = "r" + std::to_string(i);
    records.push_back({rid, "t", std::nullopt, std::nullopt, {names[i], "Other Person"}});
    instances.push_back({"i" + std::to_string(i), rid, 0, "L" + std::to_string(i)});
  }
  return Corpus(std::move(records), std::move(instances));
}

ErrorCode load_error(const std::string& text) {
  std::istringstream in(text);
  try {
    load_corpus(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("minimal corpus loads") {
  std::istringstream in(
      R"({"kind":"record","record_id":"r1","title":"On Names","authors":["J. Kim","H. Zha"]})"
      "\n"
      R"({"kind":"instance","instance_id":"i1","record_id":"r1","author_position":0,"author_label":"kim"})"
      "\n\n"
      R"({"kind":"instance","instance_id":"i2","record_id":"r1","author_position":1,"author_label":"zha"})"
      "\n");
  const Corpus c = load_corpus(in);
  CHECK(c.records().size() == 1);
  CHECK(c.instances().size() == 2);
  CHECK(c.focal_name(c.instances()[1]) == "H. Zha");
  CHECK_FALSE(c.records()[0].venue.has_value());
}

TEST_CASE("instances may precede their records") {
  std::istringstream in(
      R"({"kind":"instance","instance_id":"i1","record_id":"r1","author_position":0,"author_label":"a"})"
      "\n"
      R"({"kind":"record","record_id":"r1","title":"x","venue":"KDD","year":2010,"authors":["A B"]})");
  const Corpus c = load_corpus(in);
  CHECK(c.records()[0].year == 2010);
}

TEST_CASE("integrity violations are rejected") {
  const std::string rec = R"({"kind":"record","record_id":"r1","title":"t","authors":["A B","C D"]})";
  auto inst = [](const std::string& id, const std::string& rid, int pos, const std::string& label) {
    return R"({"kind":"instance","instance_id":")" + id + R"(","record_id":")" + rid +
           R"(","author_position":)" + std::to_string(pos) + R"(,"author_label":")" + label + "\"}";
  };
  CHECK(load_error(rec + "\n" + inst("i1", "r1", 5, "a")) == ErrorCode::Integrity);
  CHECK(load_error(rec + "\n" + inst("i1", "r9", 0, "a")) == ErrorCode::Integrity);
  CHECK(load_error(rec + "\n" + inst("i1", "r1", 0, "")) == ErrorCode::Integrity);
  CHECK(load_error(rec + "\n" + inst("i1", "r1", 0, "a") + "\n" + inst("i1", "r1", 1, "b")) ==
        ErrorCode::Integrity);
  CHECK(load_error(rec + "\n" + rec) == ErrorCode::Integrity);
  CHECK(load_error(R"({"kind":"record","record_id":"r1","title":"t","authors":[]})") == ErrorCode::Integrity);
}

TEST_CASE("malformed input is a parse error with a line number") {
  std::istringstream in("{\"kind\":\"record\",\"record_id\":\"r1\",\"title\":\"t\",\"authors\":[\"A\"]}\n{not json\n");
  try {
    load_corpus(in);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(load_error(R"({"kind":"thing"})") == ErrorCode::Parse);
  CHECK(load_error(R"({"kind":"record","record_id":"r1","authors":["A"]})") == ErrorCode::Parse);
}

TEST_CASE("missing file is an io error") {
  try {
    load_corpus_file("/nonexistent/corpus.jsonl");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("five-record J. Kim corpus has four distinct labels") {
  const Corpus c = oracle::kim_corpus();
  CHECK(c.instances().size() == 5);
  CHECK(c.label_count() == 4);
}

TEST_CASE("name variants share one block") {
  const Corpus c = corpus_with_focal_names({"J. Lee", "Jinho Lee", "Lee, Jaewoo"});
  const Blocking b = build_blocks(c);
  REQUIRE(b.blocks.size() == 1);
  CHECK(b.blocks[0].key == "j lee");
  CHECK(b.blocks[0].size() == 3);
  CHECK(b.rejected.empty());
}

TEST_CASE("different initials split blocks") {
  const Blocking b = build_blocks(corpus_with_focal_names({"J. Lee", "S. Lee"}));
  REQUIRE(b.blocks.size() == 2);
  CHECK(b.blocks[0].key == "j lee");
  CHECK(b.blocks[1].key == "s lee");
}

TEST_CASE("reference block names are valid keys") {
  std::vector<std::string> names;
  for (const auto& row : oracle::kReferenceBlocks) names.emplace_back(row.block);
  const Blocking b = build_blocks(corpus_with_focal_names(names));
  CHECK(b.blocks.size() == 10);
  std::set<std::string> keys;
  for (const auto& blk : b.blocks) keys.insert(blk.key);
  CHECK(keys.count("a gupta") == 1);
  CHECK(keys.count("y chen") == 1);
}

TEST_CASE("names without a surname go to the reject list") {
  const Blocking b = build_blocks(corpus_with_focal_names({"Madonna", "J. Lee", "?!"}));
  REQUIRE(b.blocks.size() == 2);
  CHECK(b.blocks[0].key == "j lee");
  CHECK(b.blocks[1].key == "madonna");
  REQUIRE(b.rejected.size() == 1);
  CHECK(b.rejected[0].instance_id == "i2");
}

TEST_CASE("block filter is inclusive at the boundary") {
  auto block = [](const std::string& key, std::size_t n) {
    Block b{key, {}};
    b.members.resize(n);
    return b;
  };
  std::vector<Block> blocks{block("a", 94), block("b", 100), block("c", 855)};
  const auto kept = filter_blocks(blocks, 100);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].size() == 100);
  CHECK(kept[1].size() == 855);
  CHECK(filter_blocks(blocks, 1).size() == 3);
  CHECK_THROWS_AS(filter_blocks(blocks, 0), Error);
}

TEST_CASE("split halves a block deterministically") {
  for (std::size_t n : {10u, 9u}) {
    std::vector<std::string> names(n, "J. Lee");
    const Corpus c = corpus_with_focal_names(names);
    const Block blk = build_blocks(c).blocks.at(0);
    const auto s1 = split_train_test(c, blk, 42);
    const auto s2 = split_train_test(c, blk, 42);
    CHECK(s1.train.size() == 5);
    CHECK(s1.test.size() == n - 5);
    CHECK(s1.train == s2.train);
    CHECK(s1.test == s2.test);

    std::vector<std::size_t> all = s1.train;
    all.insert(all.end(), s1.test.begin(), s1.test.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> members = blk.members;
    std::sort(members.begin(), members.end());
    CHECK(all == members);
  }
}

TEST_CASE("split varies with the seed") {
  const Corpus c = corpus_with_focal_names(std::vector<std::string>(30, "J. Lee"));
  const Block blk = build_blocks(c).blocks.at(0);
  bool differs = false;
  for (std::uint64_t s = 1; s < 5 && !differs; ++s)
    differs = split_train_test(c, blk, 0).train != split_train_test(c, blk, s).train;
  CHECK(differs);
}
