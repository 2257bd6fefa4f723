// Copyright 2026 The Authors.
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

#ifndef D2DCACHE_RNG_HPP_
#define D2DCACHE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace d2dcache {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby seeds.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent seed from a top-level seed and a purpose label
/// (FNV-1a over the label, mixed with the seed). Every random consumer in the
/// project draws from a substream so runs are reproducible end to end.
inline uint64_t derive_seed(uint64_t seed, std::string_view label) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return mix64(seed ^ mix64(h));
}

inline Rng substream(uint64_t seed, std::string_view label) {
  return Rng(derive_seed(seed, label));
}

/// Uniform draw in [0, 1).
inline double uniform01(Rng& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

inline double sample_exponential(Rng& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

}  // namespace d2dcache

#endif  // D2DCACHE_RNG_HPP_
