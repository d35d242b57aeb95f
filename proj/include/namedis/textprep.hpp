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

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace namedis {

/// Ordered lowercase ASCII tokens, none empty, none containing whitespace.
using TokenSeq = std::vector<std::string>;

/// Lowercases, folds accented letters to ASCII and splits on every
/// non-alphanumeric character. A comma terminates the token it follows and
/// stays attached to it ("Kim, J." -> {"kim,", "j"}); commas with no
/// preceding token are dropped.
TokenSeq normalize_text(std::string_view raw);

/// Lowercase ASCII rendering of UTF-8 text: canonical decomposition, then
/// combining marks removed. Letters without an ASCII decomposition are
/// dropped; other non-ASCII symbols become a space.
std::string fold_to_ascii(std::string_view utf8);

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  /// One word per line, '#' starts a comment, blank lines ignored.
  static Stoplist parse(std::istream& in);
  static Stoplist from_file(const std::string& path);
  /// The list compiled into the library.
  static const Stoplist& standard();

  bool contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

TokenSeq remove_stopwords(const TokenSeq& tokens, const Stoplist& stoplist);

/// Porter (1980) suffix stripping, as in Martin Porter's reference C code.
/// Tokens that are not purely lowercase alphabetic are returned unchanged.
std::string porter_stem(std::string_view token);

struct CanonicalName {
  std::optional<char> initial;
  std::string surname;

  /// "i surname", or just "surname" when no forename was present.
  std::string key() const;
};

/// Reduces an author name to first-forename initial plus full surname.
/// "Surname, Forename" order is recognized when a comma-bearing token is
/// followed by another token; otherwise the last token is the surname.
/// Throws Error(Canonicalization) when no surname survives normalization.
CanonicalName canonicalize_name(std::string_view raw);

}  // namespace namedis
