/*
   Copyright 2026 rs-repair contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RSREPAIR_RNG_HPP
#define RSREPAIR_RNG_HPP

#include <cstdint>
#include <vector>

#include "rsrepair/gf.hpp"
#include "rsrepair/rs.hpp"

namespace rsrepair {

/// Counter-based splitmix recurrence over 64-bit state. The exact update is
/// part of the tool's reproducibility contract (documented in the README):
/// identical seeds produce identical sampled codewords on any platform.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/// Independent substream: state = seed + (tag + 1) * golden ratio constant.
inline SplitMix64 rng_stream(uint64_t seed, uint64_t tag) {
    return SplitMix64{seed + (tag + 1) * 0x9E3779B97F4A7C15ull};
}

/// Field element with each coefficient drawn as next() mod q.
inline FieldElem random_elem(const FieldCtx& F, SplitMix64& rng) {
    GfVec c(F.ell());
    for (auto& v : c) v = (uint32_t)(rng.next() % F.q());
    return FieldElem{std::move(c)};
}

inline std::vector<FieldElem> random_message(const RSCode& code, SplitMix64& rng) {
    std::vector<FieldElem> msg;
    msg.reserve(code.k());
    for (int i = 0; i < code.k(); ++i) msg.push_back(random_elem(code.ctx(), rng));
    return msg;
}

}  // namespace rsrepair

#endif  // RSREPAIR_RNG_HPP
