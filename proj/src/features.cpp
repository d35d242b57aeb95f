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

#include "namedis/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "namedis/error.hpp"

namespace namedis {

namespace {

void check_gram_size(int n) {
  if (n < 2 || n > 4) throw Error(ErrorCode::InvalidArgument, "n-gram size must be 2, 3 or 4");
}

// Visits every gram of a token sequence as a packed key.
template <class Fn>
void for_each_gram(const TokenSeq& tokens, int n, Fn&& fn) {
  const auto un = static_cast<std::size_t>(n);
  for (const auto& t : tokens) {
    if (t.size() < un) {
      fn(pack_gram(t));
      continue;
    }
    for (std::size_t i = 0; i + un <= t.size(); ++i) fn(pack_gram(std::string_view(t).substr(i, un)));
  }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> packed_counts(const TokenSeq& tokens, int n) {
  std::vector<std::uint32_t> grams;
  for_each_gram(tokens, n, [&](std::uint32_t g) { grams.push_back(g); });
  std::sort(grams.begin(), grams.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counts;
  for (auto g : grams) {
    if (!counts.empty() && counts.back().first == g)
      ++counts.back().second;
    else
      counts.emplace_back(g, 1);
  }
  return counts;
}

}  // namespace

std::uint32_t pack_gram(std::string_view gram) {
  if (gram.size() > 4) throw Error(ErrorCode::InvalidArgument, "gram longer than 4 bytes");
  std::uint32_t packed = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    packed <<= 8;
    if (i < gram.size()) packed |= static_cast<unsigned char>(gram[i]);
  }
  return packed;
}

std::string unpack_gram(std::uint32_t packed) {
  std::string s;
  for (int shift = 24; shift >= 0; shift -= 8) {
    const auto c = static_cast<char>((packed >> shift) & 0xff);
    if (c == 0) break;
    s.push_back(c);
  }
  return s;
}

InstanceFields field_text(const Corpus& corpus, const NameInstance& instance, const Stoplist& stoplist) {
  const BibRecord& record = corpus.record_of(instance);
  InstanceFields fields;
  for (std::size_t i = 0; i < record.authors.size(); ++i) {
    if (i == instance.author_position) continue;
    try {
      fields.coauthors.tokens.push_back(canonicalize_name(record.authors[i]).key());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Canonicalization) throw;
    }
  }
  TokenSeq words;
  for (auto& t : normalize_text(record.title)) {
    while (!t.empty() && t.back() == ',') t.pop_back();
    if (!t.empty()) words.push_back(std::move(t));
  }
  for (const auto& w : remove_stopwords(words, stoplist)) fields.title.tokens.push_back(porter_stem(w));
  return fields;
}

NgramProfile char_ngrams(const TokenSeq& tokens, int n, Feature feature) {
  check_gram_size(n);
  NgramProfile profile{feature, n, {}};
  const auto un = static_cast<std::size_t>(n);
  for (const auto& t : tokens) {
    if (t.empty()) continue;
    if (t.size() < un) {
      ++profile.counts[t];
      continue;
    }
    for (std::size_t i = 0; i + un <= t.size(); ++i) ++profile.counts[t.substr(i, un)];
  }
  return profile;
}

IdfTable IdfTable::build(std::span<const InstanceFields> documents, Feature feature, int n) {
  check_gram_size(n);
  IdfTable table;
  table.feature_ = feature;
  table.n_ = n;
  table.doc_count_ = static_cast<std::uint32_t>(documents.size());
  for (const auto& doc : documents) {
    std::unordered_set<std::uint32_t> seen;
    for_each_gram(doc.get(feature).tokens, n, [&](std::uint32_t g) { seen.insert(g); });
    for (auto g : seen) ++table.df_[g];
  }
  return table;
}

std::uint32_t IdfTable::df(std::string_view gram) const {
  const auto it = df_.find(pack_gram(gram));
  return it == df_.end() ? 0 : it->second;
}

double IdfTable::idf_packed(std::uint32_t gram) const {
  const auto it = df_.find(gram);
  const double df = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  return std::log((1.0 + doc_count_) / (1.0 + df)) + 1.0;
}

double IdfTable::idf(std::string_view gram) const { return idf_packed(pack_gram(gram)); }

std::uint64_t IdfTable::content_hash() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries(df_.begin(), df_.end());
  std::sort(entries.begin(), entries.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  feed(static_cast<std::uint64_t>(feature_));
  feed(static_cast<std::uint64_t>(n_));
  feed(doc_count_);
  for (const auto& [g, c] : entries) {
    feed(g);
    feed(c);
  }
  return h;
}

IdfSet build_idf_set(std::span<const InstanceFields> training) {
  if (training.empty()) throw Error(ErrorCode::InvalidArgument, "IDF needs at least one training instance");
  IdfSet set;
  for (std::size_t c = 0; c < kChannels; ++c)
    set[c] = IdfTable::build(training, channel_feature(c), channel_gram_size(c));
  return set;
}

InstanceProfile weigh(const InstanceFields& fields, const IdfSet& idf) {
  InstanceProfile profile;
  for (std::size_t c = 0; c < kChannels; ++c) {
    const IdfTable& table = idf[c];
    auto& entries = profile.channels[c].entries;
    double norm2 = 0.0;
    for (const auto& [g, count] : packed_counts(fields.get(table.feature()).tokens, table.n())) {
      const double w = count * table.idf_packed(g);
      entries.emplace_back(g, w);
      norm2 += w * w;
    }
    const double norm = std::sqrt(norm2);
    for (auto& e : entries) e.second /= norm;
  }
  return profile;
}

SimilarityVector similarity(const InstanceProfile& a, const InstanceProfile& b) {
  SimilarityVector sim{};
  for (std::size_t c = 0; c < kChannels; ++c) {
    const auto& x = a.channels[c].entries;
    const auto& y = b.channels[c].entries;
    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i].first < y[j].first) {
        ++i;
      } else if (y[j].first < x[i].first) {
        ++j;
      } else {
        dot += x[i].second * y[j].second;
        ++i;
        ++j;
      }
    }
    sim[c] = std::clamp(dot, 0.0, 1.0);
  }
  return sim;
}

SimilarityVector pair_similarity(const InstanceFields& a, const InstanceFields& b, const IdfSet& idf) {
  return similarity(weigh(a, idf), weigh(b, idf));
}

}  // namespace namedis
