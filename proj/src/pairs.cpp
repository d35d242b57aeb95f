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

#include "namedis/pairs.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "namedis/error.hpp"
#include "namedis/rng.hpp"

namespace namedis {

std::vector<PairRef> enumerate_pairs(std::span<const PairMember> members) {
  std::vector<PairRef> pairs;
  if (members.size() < 2) return pairs;
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return members[x].id < members[y].id; });
  pairs.reserve(members.size() * (members.size() - 1) / 2);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto a = order[i];
      const auto b = order[j];
      pairs.push_back({a, b, members[a].label == members[b].label});
    }
  }
  return pairs;
}

std::uint64_t max_ratio(std::uint64_t positives, std::uint64_t negatives) {
  if (positives == 0) throw Error(ErrorCode::UndefinedRatio, "no positive pairs: ratio undefined");
  // Largest r whose 1:r sample still leaves some negatives out; the next
  // point on the sweep is "all".
  return negatives == 0 ? 0 : (negatives - 1) / positives;
}

RatioPlan RatioPlan::exact(std::uint32_t r) {
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "ratio must be a positive integer");
  return RatioPlan{Kind::Exact, r};
}

std::string RatioPlan::label() const {
  return kind == Kind::All ? std::string("all") : std::to_string(ratio);
}

std::size_t RatioPlan::negatives_for(std::size_t positives, std::size_t available) const {
  if (kind == Kind::All) return available;
  return std::min<std::size_t>(static_cast<std::size_t>(ratio) * positives, available);
}

RatioPlan parse_ratio(std::string_view text) {
  if (text == "all") return RatioPlan::all();
  std::uint32_t r = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), r);
  if (ec != std::errc() || ptr != text.data() + text.size() || r == 0)
    throw Error(ErrorCode::InvalidArgument, "bad ratio \"" + std::string(text) + "\"");
  return RatioPlan::exact(r);
}

std::vector<std::size_t> sample_negative_indices(std::size_t positives, std::size_t negatives,
                                                 const RatioPlan& plan, std::uint64_t seed) {
  if (positives == 0) throw Error(ErrorCode::InvalidArgument, "sampling requires at least one positive pair");
  const std::size_t k = plan.negatives_for(positives, negatives);
  std::vector<std::size_t> pool(negatives);
  std::iota(pool.begin(), pool.end(), 0);
  if (k < negatives) {
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.uniform_index(negatives - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
  }
  return pool;
}

template <class Pair>
std::vector<Pair> sample_training_pairs(std::span<const Pair> positives, std::span<const Pair> negatives,
                                        const RatioPlan& plan, std::uint64_t seed) {
  const auto keep = sample_negative_indices(positives.size(), negatives.size(), plan, seed);
  std::vector<Pair> out(positives.begin(), positives.end());
  out.reserve(positives.size() + keep.size());
  for (auto i : keep) out.push_back(negatives[i]);
  return out;
}

template std::vector<PairRef> sample_training_pairs(std::span<const PairRef>, std::span<const PairRef>,
                                                    const RatioPlan&, std::uint64_t);
template std::vector<LabeledPair> sample_training_pairs(std::span<const LabeledPair>, std::span<const LabeledPair>,
                                                        const RatioPlan&, std::uint64_t);

}  // namespace namedis
