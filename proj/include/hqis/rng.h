// Copyright 2026 The HQIS Authors
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

#ifndef HQIS_RNG_H
#define HQIS_RNG_H

#include <cstdint>
#include <random>

#include "hqis/secret_state.h"

namespace hqis {

using RandomSource = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(RandomSource &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream number `index` of a run seeded with `seed`.
///
/// Stream k is seeded with mix64(seed + k * 0x9E3779B97F4A7C15) so any single
/// trial can be replayed without generating the ones before it.
inline RandomSource derive_stream(std::uint64_t seed, std::uint64_t index) {
    return RandomSource(mix64(seed + index * 0x9E3779B97F4A7C15ULL));
}

/// Haar-random single-qubit pure state: a normalized complex Gaussian pair.
inline SecretState random_secret(RandomSource &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double a_re = normal(rng);
    double a_im = normal(rng);
    double b_re = normal(rng);
    double b_im = normal(rng);
    return SecretState::normalized({a_re, a_im}, {b_re, b_im});
}

}  // namespace hqis

#endif
