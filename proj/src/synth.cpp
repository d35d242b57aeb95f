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

#include "namedis/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "namedis/error.hpp"
#include "namedis/rng.hpp"

namespace namedis {

void SynthSpec::validate() const {
  if (authors < 1 || per_author < 1 || coauthor_pool < 1 || vocabulary < 1 || ambiguity < 1)
    throw Error(ErrorCode::InvalidArgument, "synthetic corpus counts must all be at least 1");
  if (per_author_spread >= per_author)
    throw Error(ErrorCode::InvalidArgument, "per-author spread must be smaller than per-author count");
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw Error(ErrorCode::InvalidArgument, "overlap must lie in [0, 1]");
}

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvwz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::array<std::string_view, 6> kFillers{"of", "the", "for", "on", "with", "a"};
constexpr std::array<std::string_view, 5> kVenues{"JCDL", "Scientometrics", "SIGIR", "CIKM", "JASIST"};

class NameFactory {
 public:
  explicit NameFactory(Rng& rng) : rng_(rng) {}

  // Pronounceable lowercase string, unique across the factory's lifetime.
  std::string fresh(std::size_t min_syllables, std::size_t max_syllables) {
    for (;;) {
      const auto count = min_syllables + rng_.uniform_index(max_syllables - min_syllables + 1);
      std::string s;
      for (std::size_t i = 0; i < count; ++i) {
        s.push_back(kConsonants[rng_.uniform_index(kConsonants.size())]);
        s.push_back(kVowels[rng_.uniform_index(kVowels.size())]);
        if (rng_.bernoulli(0.3)) s.push_back(kConsonants[rng_.uniform_index(kConsonants.size())]);
      }
      if (used_.insert(s).second) return s;
    }
  }

  std::string person() { return capitalize(fresh(1, 3)) + " " + capitalize(fresh(2, 3)); }

  static std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

template <class T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.uniform_index(items.size())];
}

}  // namespace

Corpus synth_corpus(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  NameFactory names(rng);

  std::vector<std::string> shared_people;
  for (std::size_t i = 0; i < std::max<std::size_t>(2 * spec.coauthor_pool, 8); ++i) shared_people.push_back(names.person());
  std::vector<std::string> shared_words;
  for (std::size_t i = 0; i < std::max<std::size_t>(3 * spec.vocabulary, 20); ++i) shared_words.push_back(names.fresh(2, 3));

  std::vector<BibRecord> records;
  std::vector<NameInstance> instances;
  char buf[32];

  const std::size_t blocks = (spec.authors + spec.ambiguity - 1) / spec.ambiguity;
  std::size_t author = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::string surname = NameFactory::capitalize(names.fresh(2, 3));
    const char initial = static_cast<char>('A' + rng.uniform_index(26));
    for (std::size_t k = 0; k < spec.ambiguity && author < spec.authors; ++k, ++author) {
      std::snprintf(buf, sizeof buf, "a%05zu", author);
      const std::string label = buf;
      const std::string forename =
          std::string(1, initial) + names.fresh(1, 2).substr(0, 3 + rng.uniform_index(3));
      std::vector<std::string> people, words;
      for (std::size_t i = 0; i < spec.coauthor_pool; ++i) people.push_back(names.person());
      for (std::size_t i = 0; i < spec.vocabulary; ++i) words.push_back(names.fresh(2, 3));

      const std::size_t count = spec.per_author - spec.per_author_spread +
                                static_cast<std::size_t>(rng.uniform_index(2 * spec.per_author_spread + 1));
      for (std::size_t m = 0; m < count; ++m) {
        BibRecord rec;
        std::snprintf(buf, sizeof buf, "r%07zu", records.size());
        rec.record_id = buf;

        std::vector<std::string> title;
        const auto n_words = 4 + rng.uniform_index(4);
        for (std::size_t w = 0; w < n_words; ++w)
          title.push_back(rng.bernoulli(spec.overlap) ? pick(rng, shared_words) : pick(rng, words));
        const auto n_fillers = 1 + rng.uniform_index(2);
        for (std::size_t f = 0; f < n_fillers; ++f) {
          const auto at = rng.uniform_index(title.size() + 1);
          title.insert(title.begin() + static_cast<std::ptrdiff_t>(at),
                       std::string(kFillers[rng.uniform_index(kFillers.size())]));
        }
        for (std::size_t w = 0; w < title.size(); ++w) {
          if (w > 0) rec.title.push_back(' ');
          rec.title += w == 0 ? NameFactory::capitalize(title[w]) : title[w];
        }
        rec.venue = std::string(kVenues[rng.uniform_index(kVenues.size())]);
        rec.year = 1995 + static_cast<std::int64_t>(rng.uniform_index(23));

        const auto n_coauthors = 1 + rng.uniform_index(3);
        for (std::size_t c = 0; c < n_coauthors; ++c) {
          const std::string& who = rng.bernoulli(spec.overlap) ? pick(rng, shared_people) : pick(rng, people);
          if (std::find(rec.authors.begin(), rec.authors.end(), who) == rec.authors.end()) rec.authors.push_back(who);
        }
        std::string focal;
        switch (rng.uniform_index(4)) {
          case 0: focal = std::string(1, initial) + ". " + surname; break;
          case 1: focal = forename + " " + surname; break;
          case 2: focal = surname + ", " + forename; break;
          default: focal = surname + ", " + std::string(1, initial) + "."; break;
        }
        const auto position = static_cast<std::size_t>(rng.uniform_index(rec.authors.size() + 1));
        rec.authors.insert(rec.authors.begin() + static_cast<std::ptrdiff_t>(position), focal);

        NameInstance inst;
        std::snprintf(buf, sizeof buf, "i%07zu", instances.size());
        inst.instance_id = buf;
        inst.record_id = rec.record_id;
        inst.author_position = position;
        inst.author_label = label;
        records.push_back(std::move(rec));
        instances.push_back(std::move(inst));
      }
    }
  }
  return Corpus(std::move(records), std::move(instances));
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  using nlohmann::ordered_json;
  for (const auto& r : corpus.records()) {
    ordered_json line;
    line["kind"] = "record";
    line["record_id"] = r.record_id;
    line["title"] = r.title;
    line["venue"] = r.venue ? ordered_json(*r.venue) : ordered_json(nullptr);
    line["year"] = r.year ? ordered_json(*r.year) : ordered_json(nullptr);
    line["authors"] = r.authors;
    out << line.dump() << '\n';
  }
  for (const auto& i : corpus.instances()) {
    ordered_json line;
    line["kind"] = "instance";
    line["instance_id"] = i.instance_id;
    line["record_id"] = i.record_id;
    line["author_position"] = i.author_position;
    line["author_label"] = i.author_label;
    out << line.dump() << '\n';
  }
}

}  // namespace namedis
