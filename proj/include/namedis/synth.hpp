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
#include <ostream>

#include "namedis/corpus.hpp"

namespace namedis {

/// Parameters of the synthetic labeled corpus.
struct SynthSpec {
  /// Total authors; blocks = ceil(authors / ambiguity).
  std::size_t authors = 10;
  std::size_t per_author = 20;
  /// Instances per author are drawn uniformly from per_author +/- spread.
  std::size_t per_author_spread = 0;
  /// Private coauthor names per author.
  std::size_t coauthor_pool = 6;
  /// Private title words per author.
  std::size_t vocabulary = 10;
  /// Probability that a coauthor or title word is drawn from the shared pool
  /// instead of the author's own; 0 separates authors, 1 erases identity.
  double overlap = 0.0;
  /// Authors sharing one canonical focal name (one block).
  std::size_t ambiguity = 5;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Deterministic per seed. Every author in a block gets a different spelling
/// of the same canonical name.
Corpus synth_corpus(const SynthSpec& spec);

/// Writes a corpus in the canonical JSONL layout.
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace namedis
