// Copyright 2026 The Kagome VQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace kagome {

using Seed = std::uint64_t;

// SplitMix64 finalizer. Used to derive independent stream seeds from a root
// seed plus a tuple of stream identifiers.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the stream identified by (root, ids...). Distinct id tuples give
// statistically independent mt19937_64 streams.
inline Seed derive_seed(Seed root, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t id : ids) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits; portable across standard
// libraries, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace kagome
