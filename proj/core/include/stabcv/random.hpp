// Copyright 2026 The stabcv Authors
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

#ifndef STABCV_RANDOM_HPP_
#define STABCV_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace stabcv {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of the independent substream `index` of `seed`. Every replicate,
// fold or purpose-specific draw derives its generator from here, so results
// never depend on scheduling or worker count.
constexpr std::uint64_t stream_seed(std::uint64_t seed,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(stream_seed(seed, index));
}

// Purpose tags, combined with a replicate index via stream_seed so the data
// draw, the oracle draw and the probe draw of one replicate never share bits.
enum class StreamTag : std::uint64_t {
  kData = 1,
  kOracle = 2,
  kProbe = 3,
  kEvalSample = 4,
  kScheme = 5,
  kTiebreak = 6,
};

inline Rng make_stream(std::uint64_t seed, std::uint64_t index,
                       StreamTag tag) {
  return Rng(stream_seed(stream_seed(seed, index),
                         static_cast<std::uint64_t>(tag)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Radical inverse of `index` in `base`; point `index` of a Halton sequence.
double radical_inverse(std::uint64_t index, unsigned base) noexcept;

// First `count` points of the `dim`-dimensional Halton sequence (skipping
// the origin), each coordinate in (0, 1).
std::vector<std::vector<double>> halton_points(std::size_t count,
                                               std::size_t dim);

}  // namespace stabcv

#endif  // STABCV_RANDOM_HPP_
