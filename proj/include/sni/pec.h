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

#ifndef SNI_PEC_H
#define SNI_PEC_H

#include <map>
#include <string>
#include <vector>

#include "sni/engine.h"
#include "sni/noise.h"
#include "sni/sampler.h"

namespace sni {

/// Primitive type of a part: the gate name, or "prepare:<basis>" / "measure:<basis>".
std::string part_type(OpType type, const OpPart &part);

/// Uncorrelated Pauli model: one channel per primitive part type on that part's qubits.
struct SparseModel {
    std::map<std::string, PauliChannel> channels;
};

/// Per-type Pauli counts pooled over every non-Pauli part of every kind. A cell on a kind's noisy
/// support contributes its restriction to each part's qubits.
class SparseCounts {
   public:
    SparseCounts(const CompiledCircuit &cc, const SpacetimeLayout &layout);

    void add(const SpacetimeError &e);
    void merge(const SparseCounts &other);
    uint64_t instances() const {
        return instances_;
    }
    /// Empirical frequencies; throws EstimationError without samples.
    SparseModel model() const;

   private:
    struct PartRef {
        size_t type;
        std::vector<size_t> positions;
    };
    std::vector<std::string> types_;
    std::vector<size_t> type_qubits_;
    std::vector<uint64_t> occurrences_;  // part occurrences per instance, by type
    std::vector<std::vector<uint64_t>> counts_;
    std::vector<std::vector<PartRef>> kind_parts_;
    std::vector<size_t> offsets_, slots_;
    uint64_t instances_ = 0;
};

/// Fits the sparse model from the first M_P instances of the rate-estimation stream (the same
/// instances SNI uses for its rate estimate with this seed).
SparseModel fit_sparse_model(const CompiledCircuit &cc, const SpacetimeSampler &sampler, uint64_t M_P,
                             uint64_t seed, size_t threads = 0);

/// Signed Pauli map m with m composed with c equal to the identity, by inverting Pauli fidelities.
/// Throws SingularityError when a fidelity is below kSingularity in magnitude.
inline constexpr double kSingularity = 1e-9;
SignedPauliMap quasi_inverse(const PauliChannel &c);

/// Conventional PEC: after each non-Pauli part, a Pauli drawn from the normalized |quasi-inverse| of its
/// type, with the sign and norm folded into the shot weight. When `endecode` is given, its
/// encode/decode insertions are applied as in SNI.
MitigationResult run_cpec(const CompiledCircuit &cc, const NoiseModel &noise, const SparseModel &model,
                          const SpacetimeSampler *endecode, const Observable &a, const MitigationOptions &options);

}  // namespace sni

#endif
