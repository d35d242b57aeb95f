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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "namedis/features.hpp"

namespace namedis {

/// One unordered instance pair. `a` and `b` index the member list handed to
/// enumerate_pairs, normalized so that id(a) < id(b).
struct PairRef {
  std::size_t a = 0;
  std::size_t b = 0;
  bool match = false;

  friend bool operator==(const PairRef&, const PairRef&) = default;
};

struct LabeledPair {
  std::string a;
  std::string b;
  SimilarityVector sim{};
  bool match = false;
};

struct PairMember {
  std::string_view id;
  std::string_view label;
};

/// All n(n-1)/2 pairs in canonical order (lexicographic on (id(a), id(b))).
/// Fewer than two members yields an empty list.
std::vector<PairRef> enumerate_pairs(std::span<const PairMember> members);

/// Largest r with r * positives < negatives (0 without negatives), so 1:R
/// never coincides with using every negative. Equals floor(negatives /
/// positives) unless that division is exact. Throws Error(UndefinedRatio)
/// when there are no positives.
std::uint64_t max_ratio(std::uint64_t positives, std::uint64_t negatives);

/// How many negatives accompany the positives in a training set.
struct RatioPlan {
  enum class Kind { Exact, All };
  Kind kind = Kind::All;
  std::uint32_t ratio = 0;  // r in 1:r, used when kind == Exact

  static RatioPlan exact(std::uint32_t r);
  static RatioPlan all() { return {}; }

  /// "1", "10", ... or "all".
  std::string label() const;
  /// Negatives to draw given the available pool.
  std::size_t negatives_for(std::size_t positives, std::size_t available) const;

  friend bool operator==(const RatioPlan&, const RatioPlan&) = default;
};

/// Parses "all" or a positive integer.
RatioPlan parse_ratio(std::string_view text);

/// Indices into the negative pool to keep under a plan, ascending. The draw is
/// a seeded partial Fisher-Yates prefix, so for a fixed seed the sample for a
/// smaller ratio is a subset of the sample for a larger one.
std::vector<std::size_t> sample_negative_indices(std::size_t positives, std::size_t negatives,
                                                 const RatioPlan& plan, std::uint64_t seed);

/// All positives followed by the sampled negatives, both in input order.
/// Throws Error(InvalidArgument) when positives is empty.
template <class Pair>
std::vector<Pair> sample_training_pairs(std::span<const Pair> positives, std::span<const Pair> negatives,
                                        const RatioPlan& plan, std::uint64_t seed);

extern template std::vector<PairRef> sample_training_pairs(std::span<const PairRef>, std::span<const PairRef>,
                                                           const RatioPlan&, std::uint64_t);
extern template std::vector<LabeledPair> sample_training_pairs(std::span<const LabeledPair>,
                                                               std::span<const LabeledPair>, const RatioPlan&,
                                                               std::uint64_t);

}  // namespace namedis
