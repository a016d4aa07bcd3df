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

#ifndef SNI_ALIAS_H
#define SNI_ALIAS_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sni/rng.h"

namespace sni {

/// Walker alias table over a finite set of nonnegative weights. O(1) per draw.
class AliasTable {
   public:
    AliasTable() = default;
    explicit AliasTable(std::span<const double> weights);

    size_t sample(Rng &rng) const;
    size_t size() const {
        return prob_.size();
    }
    bool empty() const {
        return prob_.empty();
    }

   private:
    std::vector<double> prob_;
    std::vector<uint32_t> alias_;
};

}  // namespace sni

#endif
