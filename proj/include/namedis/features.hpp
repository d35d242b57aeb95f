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

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "namedis/corpus.hpp"
#include "namedis/textprep.hpp"

namespace namedis {

enum class Feature { Coauthors, TitleWords };

struct FieldText {
  Feature feature = Feature::Coauthors;
  TokenSeq tokens;
};

/// The two feature fields of one name instance.
struct InstanceFields {
  FieldText coauthors{Feature::Coauthors, {}};
  FieldText title{Feature::TitleWords, {}};

  const FieldText& get(Feature f) const { return f == Feature::Coauthors ? coauthors : title; }
};

/// Coauthors: canonical "i surname" keys of every byline author except the
/// focal one (names that fail to canonicalize are skipped). Title words:
/// normalize, strip commas, drop stop words, then Porter-stem.
InstanceFields field_text(const Corpus& corpus, const NameInstance& instance,
                          const Stoplist& stoplist = Stoplist::standard());

inline constexpr std::array<int, 3> kGramSizes{2, 3, 4};
inline constexpr std::size_t kChannels = 6;

/// Channel order of a similarity vector: coauthor 2/3/4-grams, then title
/// word 2/3/4-grams.
constexpr Feature channel_feature(std::size_t channel) {
  return channel < 3 ? Feature::Coauthors : Feature::TitleWords;
}
constexpr int channel_gram_size(std::size_t channel) { return kGramSizes[channel % 3]; }

struct NgramProfile {
  Feature feature = Feature::TitleWords;
  int n = 2;
  std::map<std::string, std::uint32_t> counts;
};

/// Character n-grams taken inside each token; a token shorter than n is a
/// gram by itself. n must be 2, 3 or 4.
NgramProfile char_ngrams(const TokenSeq& tokens, int n, Feature feature = Feature::TitleWords);

/// Document frequencies of n-grams for one (feature, n) channel over a set of
/// training instances. Frozen after construction.
class IdfTable {
 public:
  IdfTable() = default;
  static IdfTable build(std::span<const InstanceFields> documents, Feature feature, int n);

  Feature feature() const { return feature_; }
  int n() const { return n_; }
  std::uint32_t doc_count() const { return doc_count_; }
  std::uint32_t df(std::string_view gram) const;
  std::size_t vocabulary_size() const { return df_.size(); }

  /// ln((1 + N) / (1 + df)) + 1; unseen grams get the largest weight.
  double idf(std::string_view gram) const;
  double idf_packed(std::uint32_t gram) const;

  /// Order-independent digest of the table contents.
  std::uint64_t content_hash() const;

 private:
  Feature feature_ = Feature::Coauthors;
  int n_ = 2;
  std::uint32_t doc_count_ = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> df_;
};

using IdfSet = std::array<IdfTable, kChannels>;

/// Builds all six channels from a block's training instances.
IdfSet build_idf_set(std::span<const InstanceFields> training);

/// Six cosine similarities in channel order, each in [0, 1].
using SimilarityVector = std::array<double, kChannels>;

/// TF-IDF weighted n-gram vector of one channel, L2-normalized, sorted by
/// packed gram. Empty when the field has no grams.
struct WeightedProfile {
  std::vector<std::pair<std::uint32_t, double>> entries;
};

struct InstanceProfile {
  std::array<WeightedProfile, kChannels> channels;
};

InstanceProfile weigh(const InstanceFields& fields, const IdfSet& idf);

/// Cosine per channel of two precomputed profiles; 0 where either is empty.
SimilarityVector similarity(const InstanceProfile& a, const InstanceProfile& b);

SimilarityVector pair_similarity(const InstanceFields& a, const InstanceFields& b, const IdfSet& idf);

/// Grams are at most four ASCII bytes, so they pack losslessly into 32 bits
/// with ordering preserved.
std::uint32_t pack_gram(std::string_view gram);
std::string unpack_gram(std::uint32_t packed);

}  // namespace namedis
