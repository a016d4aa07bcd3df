// Copyright 2026 The SNI-Sim Authors.
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

#ifndef SNI_RNG_H
#define SNI_RNG_H

#include <cstdint>
#include <random>

namespace sni {

using Rng = std::mt19937_64;

/// Independent random streams. Each (seed, stream, index) triple maps to its own generator, so the
/// draws made for shot `index` do not depend on how shots are distributed over threads.
enum class Stream : uint64_t {
    RateEstimation = 1,
    MitigationShot = 2,
    CpecShot = 3,
    UnmitigatedShot = 4,
    OrderPool = 5,
    Repetition = 6,
    Test = 99,
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream, uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

inline Rng make_rng(uint64_t seed, Stream stream, uint64_t index) {
    return Rng(derive_seed(seed, static_cast<uint64_t>(stream), index));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) {
    return uniform01(rng) < p;
}

}  // namespace sni

#endif
