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

#include "namedis/textprep.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <fstream>
#include <sstream>

#include "namedis/error.hpp"

namespace namedis {

namespace detail {
extern const std::string_view kBundledStopwords;
}

namespace {

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_pure_ascii(std::string_view s) {
  for (unsigned char c : s)
    if (c >= 0x80) return false;
  return true;
}

}  // namespace

std::string fold_to_ascii(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  if (is_pure_ascii(utf8)) {
    for (char c : utf8) out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    return out;
  }

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::Io, "ICU NFD normalizer unavailable");
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  const icu::UnicodeString decomposed = nfd->normalize(source, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::Io, "ICU normalization failed");

  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 cp = decomposed.char32At(i);
    i += U16_LENGTH(cp);
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
      continue;
    }
    if (u_getCombiningClass(cp) != 0 || u_charType(cp) == U_NON_SPACING_MARK) continue;
    // Letters and digits with no ASCII decomposition (ø, ß, 漢) are dropped
    // rather than split, everything else acts as a separator.
    if (!u_isalnum(cp)) out.push_back(' ');
  }
  return out;
}

TokenSeq normalize_text(std::string_view raw) {
  const std::string folded = fold_to_ascii(raw);
  TokenSeq tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : folded) {
    if (is_ascii_alnum(c)) {
      current.push_back(c);
    } else if (c == ',') {
      if (!current.empty()) {
        current.push_back(',');
        flush();
      } else if (!tokens.empty() && tokens.back().back() != ',') {
        tokens.back().push_back(',');
      }
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

Stoplist Stoplist::parse(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return Stoplist(std::move(words));
}

Stoplist Stoplist::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open stoplist: " + path);
  return parse(in);
}

const Stoplist& Stoplist::standard() {
  static const Stoplist bundled = [] {
    std::istringstream in{std::string(detail::kBundledStopwords)};
    return parse(in);
  }();
  return bundled;
}

TokenSeq remove_stopwords(const TokenSeq& tokens, const Stoplist& stoplist) {
  TokenSeq kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stoplist.contains(t)) kept.push_back(t);
  return kept;
}

std::string CanonicalName::key() const {
  if (!initial) return surname;
  std::string k(1, *initial);
  k.push_back(' ');
  k += surname;
  return k;
}

CanonicalName canonicalize_name(std::string_view raw) {
  TokenSeq tokens = normalize_text(raw);

  auto strip_comma = [](std::string s) {
    while (!s.empty() && s.back() == ',') s.pop_back();
    return s;
  };

  // Surname-first: everything up to the first comma token, forename after it.
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].back() != ',') continue;
    std::string surname;
    for (std::size_t j = 0; j <= i; ++j) {
      if (!surname.empty()) surname.push_back(' ');
      surname += strip_comma(tokens[j]);
    }
    return CanonicalName{tokens[i + 1].front(), std::move(surname)};
  }

  TokenSeq plain;
  for (auto& t : tokens) {
    auto s = strip_comma(std::move(t));
    if (!s.empty()) plain.push_back(std::move(s));
  }
  if (plain.empty())
    throw Error(ErrorCode::Canonicalization, "name has no surname: \"" + std::string(raw) + "\"");
  if (plain.size() == 1) return CanonicalName{std::nullopt, plain.front()};
  return CanonicalName{plain.front().front(), plain.back()};
}

}  // namespace namedis
