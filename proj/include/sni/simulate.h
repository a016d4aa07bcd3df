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

#ifndef SNI_SIMULATE_H
#define SNI_SIMULATE_H

#include <map>
#include <optional>
#include <vector>

#include "sni/alias.h"
#include "sni/circuit.h"
#include "sni/errors.h"
#include "sni/noise.h"
#include "sni/state.h"

namespace sni {

/// One native noise element of a kind: a Pauli channel or a unitary, on positions of the kind's noisy
/// support.
struct NoiseElement {
    std::vector<size_t> positions;
    std::optional<PauliChannel> channel;  // channel support is 0..k-1 (local to `positions`)
    Matrix unitary;
};

/// Native noise of one kind. `support` lists the global qubits the noise (and inserted errors) act on.
class KindNoise {
   public:
    KindNoise() = default;
    KindNoise(std::vector<size_t> support, std::vector<NoiseElement> elements);

    const std::vector<size_t> &support() const {
        return support_;
    }
    const std::vector<NoiseElement> &elements() const {
        return elements_;
    }
    bool is_noiseless() const {
        return elements_.empty();
    }
    /// Binds the noise to an n-qubit register (precomputes global Paulis and qubit lists).
    void bind(size_t n);

    /// Samples channel terms and applies unitaries on a trajectory.
    void apply(PureState &s, Rng &rng) const;
    /// Exact action on a density state.
    void apply(DensityState &s) const;
    /// Pauli-twirled noise on the support (composition of all elements).
    PauliChannel twirled() const;
    /// Same noise on a different support (for sampler circuits).
    KindNoise relabeled(std::vector<size_t> support) const;

   private:
    struct Bound {
        std::vector<size_t> qubits;
        std::vector<PauliString> paulis;
        AliasTable alias;
        Matrix unitary;
        bool is_channel = false;
    };
    std::vector<size_t> support_;
    std::vector<NoiseElement> elements_;
    std::vector<Bound> bound_;
    size_t bound_n_ = 0;
};

/// Noise per kind index of a compiled circuit.
using NoiseTable = std::vector<KindNoise>;

/// A noiseless table for the circuit with per-operation supports.
NoiseTable noiseless_table(const CompiledCircuit &cc);

/// Applies the ideal action of an operation step on a trajectory; records measurement outcomes.
void apply_ideal_gate(PureState &s, const Operation &op);

struct ShotRecord {
    int lambda = 0;
    std::vector<int8_t> outcomes;
    int sign = 1;
};

/// Runs one trajectory of the compiled circuit. For every noise-carrying step the callback
/// `insert(kind, index, state)` applies the inserted error of the index-th occurrence of that kind.
template <typename Insert>
void run_shot(const CompiledCircuit &cc, const NoiseTable &noise, int lambda, Rng &rng, PureState &state,
              std::vector<int8_t> &outcomes, std::vector<uint32_t> &counters, Insert &&insert);

/// Draws lambda from the circuit weights.
int sample_lambda(const RandomizedDynamicCircuit &c, Rng &rng);

/// One exactly evaluated branch: lambda, the outcomes of tracked labels (0 elsewhere) and its weight
/// (including the lambda weight).
struct Branch {
    int lambda;
    std::vector<int8_t> outcomes;
    double probability;
};

struct ExactOptions {
    /// Labels whose outcomes are kept apart; others are summed over. Empty means all labels.
    std::optional<std::vector<size_t>> tracked;
    /// Average each twirled slot over all of its Table-1 choices instead of using the identity choice.
    bool average_twirl = true;
    /// Fixed inserted error (cells on the kinds' noise supports), or none.
    const SpacetimeError *insertion = nullptr;
    size_t max_branches = 1 << 16;
};

/// Exact outcome distribution of the (noisy) circuit by density-matrix branch enumeration.
std::vector<Branch> exact_distribution(const CompiledCircuit &cc, const NoiseTable &noise,
                                       const ExactOptions &options = {});

/// Exact expectation of an observable under the given noise.
double exact_expectation(const CompiledCircuit &cc, const NoiseTable &noise, const Observable &a,
                         bool average_twirl = true);

/// Noiseless expectation <A>_I (qubit count <= 6).
double ideal_expectation(const RandomizedDynamicCircuit &c, const Observable &a);

template <typename Insert>
void run_shot(const CompiledCircuit &cc, const NoiseTable &noise, int lambda, Rng &rng, PureState &state,
              std::vector<int8_t> &outcomes, std::vector<uint32_t> &counters, Insert &&insert) {
    const auto &circuit = cc.circuit();
    const auto &slots = circuit.slots();
    state.reset();
    outcomes.assign(circuit.outcome_labels().size(), 0);
    counters.assign(cc.kinds().size(), 0);
    auto step_fn = [&](const Step &step) {
        if (!step.op) {
            state.apply_pauli(step.pauli);
            return;
        }
        const Operation &op = *step.op;
        const int kind = step.kind;
        switch (op.type) {
            case OpType::Gate:
                apply_ideal_gate(state, op);
                noise[kind].apply(state, rng);
                insert(kind, counters[kind]++, state);
                break;
            case OpType::Prepare:
                for (const auto &p : op.parts) {
                    state.prepare(p.matrix, p.flip, p.qubits[0], rng);
                }
                noise[kind].apply(state, rng);
                insert(kind, counters[kind]++, state);
                break;
            case OpType::Measure:
                insert(kind, counters[kind]++, state);
                noise[kind].apply(state, rng);
                for (const auto &p : op.parts) {
                    outcomes[p.outcome] = (int8_t)state.measure(p.matrix, p.qubits[0], rng);
                }
                break;
        }
    };
    for (size_t s = 0; s < slots.size(); s++) {
        const Slot &slot = slots[s];
        if (slot.when && !slot.when->holds(lambda, outcomes)) {
            continue;
        }
        cc.expand(s, rng, step_fn);
    }
}

}  // namespace sni

#endif
