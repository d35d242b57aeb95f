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

#include "namedis/rng.hpp"

#include <limits>

#include "namedis/error.hpp"

namespace namedis {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "io error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Integrity: return "integrity error";
    case ErrorCode::Validation: return "validation error";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::UndefinedRatio: return "undefined ratio";
    case ErrorCode::Canonicalization: return "canonicalization error";
    case ErrorCode::Training: return "training error";
  }
  return "unknown error";
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "uniform_index: bound must be positive");
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view key,
                          std::uint64_t index, std::string_view tag) {
  std::uint64_t h = mix(master);
  h = fnv1a(h, key);
  h = mix(h ^ 0xff);
  h = mix(h ^ index);
  h = fnv1a(h, tag);
  return mix(h);
}

}  // namespace namedis
