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

#include "namedis/error.hpp"
#include "namedis/pairs.hpp"
#include "oracles.hpp"

using namespace namedis;

namespace {

std::vector<PairRef> indexed(std::size_t n, bool match) {
  std::vector<PairRef> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({i, i + 1, match});
  return out;
}

}  // namespace

TEST_CASE("five-record J. Kim pairs") {
  const std::vector<PairMember> m{{"n1", "A"}, {"n2", "A"}, {"n3", "B"}, {"n4", "C"}, {"n5", "D"}};
  const auto pairs = enumerate_pairs(m);
  CHECK(pairs.size() == 10);
  CHECK(std::count_if(pairs.begin(), pairs.end(), [](const PairRef& p) { return p.match; }) == 1);
  CHECK(pairs[0] == PairRef{0, 1, true});
}

TEST_CASE("pair enumeration edge cases") {
  const std::vector<PairMember> same{{"a", "x"}, {"b", "x"}, {"c", "x"}, {"d", "x"}};
  const auto all_pos = enumerate_pairs(same);
  CHECK(all_pos.size() == 6);
  CHECK(std::all_of(all_pos.begin(), all_pos.end(), [](const PairRef& p) { return p.match; }));

  const std::vector<PairMember> two{{"a", "x"}, {"b", "y"}};
  CHECK(enumerate_pairs(two) == std::vector<PairRef>{{0, 1, false}});
  CHECK(enumerate_pairs(std::span<const PairMember>{}).empty());
}

TEST_CASE("pairs are canonical regardless of input order") {
  const std::vector<PairMember> m{{"c", "1"}, {"a", "2"}, {"b", "1"}};
  const auto pairs = enumerate_pairs(m);
  REQUIRE(pairs.size() == 3);
  // Sorted by id: a(1), b(2), c(0).
  CHECK(pairs[0] == PairRef{1, 2, false});
  CHECK(pairs[1] == PairRef{1, 0, false});
  CHECK(pairs[2] == PairRef{2, 0, true});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& p : pairs) CHECK(seen.insert({std::min(p.a, p.b), std::max(p.a, p.b)}).second);
}

TEST_CASE("max ratio reproduces the published block counts") {
  for (const auto& row : oracle::kReferenceBlocks) CHECK_MESSAGE(max_ratio(row.positives, row.negatives) == row.r, row.block);
  CHECK(max_ratio(10, 0) == 0);
  CHECK(max_ratio(10, 10) == 0);
  CHECK(max_ratio(10, 11) == 1);
  CHECK(max_ratio(10, 20) == 1);  // 1:2 would already be every negative
  CHECK(max_ratio(10, 21) == 2);
  CHECK(max_ratio(929, 36199) == 38);
  CHECK_THROWS_AS(max_ratio(0, 10), Error);
  try {
    max_ratio(0, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedRatio);
  }
}

TEST_CASE("ratio plans") {
  CHECK(parse_ratio("10") == RatioPlan::exact(10));
  CHECK(parse_ratio("all") == RatioPlan::all());
  CHECK(RatioPlan::exact(3).label() == "3");
  CHECK(RatioPlan::all().label() == "all");
  CHECK_THROWS_AS(parse_ratio("0"), Error);
  CHECK_THROWS_AS(parse_ratio("-1"), Error);
  CHECK_THROWS_AS(parse_ratio("1.5"), Error);
  CHECK_THROWS_AS(parse_ratio(""), Error);
  CHECK(RatioPlan::exact(10).negatives_for(10, 5) == 5);
  CHECK(RatioPlan::all().negatives_for(10, 5) == 5);
}

TEST_CASE("negative sampling sizes") {
  const auto pos = indexed(10, true), neg = indexed(200, false);
  const auto one = sample_training_pairs<PairRef>(pos, neg, RatioPlan::exact(1), 7);
  CHECK(one.size() == 20);
  CHECK(std::count_if(one.begin(), one.end(), [](const PairRef& p) { return p.match; }) == 10);
  CHECK(sample_training_pairs<PairRef>(pos, neg, RatioPlan::exact(10), 7).size() == 110);
  CHECK(sample_training_pairs<PairRef>(pos, neg, RatioPlan::all(), 7).size() == 210);

  const auto few = indexed(5, false);
  const auto clamped = sample_training_pairs<PairRef>(pos, few, RatioPlan::exact(10), 7);
  CHECK(clamped.size() == 15);
}

TEST_CASE("negative samples are distinct, deterministic and nested across ratios") {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    std::vector<std::size_t> previous;
    for (std::uint32_t r = 1; r <= 20; ++r) {
      const auto idx = sample_negative_indices(7, 120, RatioPlan::exact(r), seed);
      CHECK(idx.size() == std::min<std::size_t>(7u * r, 120u));
      CHECK(std::is_sorted(idx.begin(), idx.end()));
      CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
      CHECK(idx == sample_negative_indices(7, 120, RatioPlan::exact(r), seed));
      CHECK(std::includes(idx.begin(), idx.end(), previous.begin(), previous.end()));
      previous = idx;
    }
  }
  CHECK(sample_negative_indices(7, 120, RatioPlan::exact(2), 1) !=
        sample_negative_indices(7, 120, RatioPlan::exact(2), 2));
  CHECK_THROWS_AS(sample_negative_indices(0, 10, RatioPlan::exact(1), 1), Error);
}

TEST_CASE("uniform sampling covers the pool evenly") {
  std::vector<int> hits(50, 0);
  for (std::uint64_t s = 0; s < 2000; ++s)
    for (auto i : sample_negative_indices(5, 50, RatioPlan::exact(2), s)) ++hits[i];
  // Each index is drawn with probability 10/50: expect 400 +- ~5 sigma.
  for (int h : hits) {
    CHECK(h > 310);
    CHECK(h < 490);
  }
}
