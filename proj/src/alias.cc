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

#include "sni/alias.h"

#include <stdexcept>

#include "sni/errors.h"

namespace sni {

AliasTable::AliasTable(std::span<const double> weights) {
    size_t n = weights.size();
    if (n == 0) {
        throw DomainError("alias table needs at least one weight");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw DomainError("alias table weights must be nonnegative");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw DomainError("alias table weights sum to zero");
    }
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<uint32_t> small, large;
    for (size_t k = 0; k < n; k++) {
        scaled[k] = weights[k] * (double)n / total;
        (scaled[k] < 1.0 ? small : large).push_back((uint32_t)k);
    }
    while (!small.empty() && !large.empty()) {
        uint32_t s = small.back();
        small.pop_back();
        uint32_t l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (uint32_t k : large) {
        prob_[k] = 1.0;
        alias_[k] = k;
    }
    for (uint32_t k : small) {
        prob_[k] = 1.0;
        alias_[k] = k;
    }
}

size_t AliasTable::sample(Rng &rng) const {
    uint64_t r = rng();
    size_t column = (size_t)((unsigned __int128)r * prob_.size() >> 64);
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u < prob_[column] ? column : alias_[column];
}

}  // namespace sni
