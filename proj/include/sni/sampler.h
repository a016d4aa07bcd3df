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

#ifndef SNI_SAMPLER_H
#define SNI_SAMPLER_H

#include <memory>
#include <vector>

#include "sni/alias.h"
#include "sni/circuit.h"
#include "sni/noise_model.h"
#include "sni/pauli.h"
#include "sni/simulate.h"

namespace sni {

/// Distribution of one cell: a Pauli on m qubits, dense by PauliString::index().
class CellDistribution {
   public:
    CellDistribution() = default;
    CellDistribution(size_t m, std::vector<double> dense);
    static CellDistribution trivial(size_t m);

    size_t qubit_count() const {
        return m_;
    }
    double error_rate() const {
        return error_rate_;
    }
    const std::vector<double> &dense() const {
        return dense_;
    }
    const PauliString &sample(Rng &rng) const {
        return trivial_ ? identity_ : paulis_[alias_.sample(rng)];
    }

   private:
    size_t m_ = 0;
    std::vector<double> dense_;
    std::vector<PauliString> paulis_;
    AliasTable alias_;
    PauliString identity_;
    double error_rate_ = 0;
    bool trivial_ = true;
};

struct SamplerTally {
    uint64_t instances = 0;   // spacetime error instances drawn (M_es)
    uint64_t nontrivial = 0;
    std::vector<uint64_t> kind_draws;

    void merge(const SamplerTally &other);
};

/// Cell distributions indexed [variant][kind]. `endecode` is empty for samplers without
/// encode/decode insertions; measurement kinds hold trivial entries.
struct SamplerTables {
    std::vector<std::vector<CellDistribution>> kinds;
    std::vector<std::vector<CellDistribution>> endecode;
};

/// Layout with one entry per kind: slots = maximum count, support = noisy support.
std::shared_ptr<const SpacetimeLayout> make_layout(const CompiledCircuit &cc, const NoiseModel &model);

/// Spacetime error sampler with processed (order-k) draws. The noise parameter variant is drawn
/// once per spacetime instance and once per encode/decode insertion.
class SpacetimeSampler {
   public:
    static constexpr uint64_t kRejectionCap = 10'000'000;

    SpacetimeSampler(std::shared_ptr<const SpacetimeLayout> layout, SamplerTables tables,
                     std::vector<double> variant_weights);

    const SpacetimeLayout &layout() const {
        return *layout_;
    }
    const std::shared_ptr<const SpacetimeLayout> &layout_ptr() const {
        return layout_;
    }
    const SamplerTables &tables() const {
        return tables_;
    }
    bool has_endecode() const {
        return !tables_.endecode.empty();
    }
    /// Exact total error rate of one spacetime instance, averaged over variants.
    double total_error_rate() const;
    double total_error_rate(size_t variant) const;

    /// Draws one instance into `out`; returns whether it is nontrivial.
    bool draw(Rng &rng, SpacetimeError &out, SamplerTally *tally = nullptr) const;
    /// Draw whose nontriviality test is boosted: a trivial draw counts as nontrivial with probability q.
    bool draw_boosted(Rng &rng, SpacetimeError &out, double q, SamplerTally *tally = nullptr) const;
    /// Encode/decode insertion for every non-measurement cell (identity when there is none).
    void draw_endecode(Rng &rng, SpacetimeError &out) const;
    /// Order-k processed sample: product of k accepted instances times the encode/decode insertion.
    void processed(size_t k, Rng &rng, SpacetimeError &out, SpacetimeError &scratch, SamplerTally *tally = nullptr,
                   double q = 0) const;
    SpacetimeError processed(size_t k, Rng &rng, SamplerTally *tally = nullptr, double q = 0) const;

   private:
    size_t sample_variant(Rng &rng) const;

    std::shared_ptr<const SpacetimeLayout> layout_;
    SamplerTables tables_;
    std::vector<double> weights_;
};

/// Sampler drawing each cell from the Pauli-twirled native noise of its kind.
SpacetimeSampler make_ideal_sampler(const CompiledCircuit &cc, const NoiseModel &model);

/// Letter of a Bell-pair error from the XX and ZZ outcomes: (+,+) I, (+,-) X, (-,+) Z, (-,-) Y.
Letter decode_bell_pair(int xx, int zz);

/// Readout of one position of a sampler circuit.
struct Readout {
    bool bell = true;
    size_t logical = 0;   // ZZ (or kappa) readout qubit
    size_t ancilla = 0;   // XX readout qubit
    Letter flip = Letter::I;  // kappa readout: error letter of a -1 outcome
};

struct SamplerStep {
    enum class Type : uint8_t { Unitary, Prepare, Noise, Pauli };
    Type type = Type::Unitary;
    Matrix matrix;
    std::vector<size_t> qubits;
    PauliString pauli;     // Prepare: flip; Pauli: applied string
    size_t noise = 0;      // Noise: index into the per-variant noise list
};

/// Error-sampler circuit on Bell pairs: logical qubits 0..m-1, ancillas m..2m-1. Every readout is a
/// final Z measurement (basis changes are part of the steps).
class SamplerCircuit {
   public:
    size_t width = 0;
    std::vector<SamplerStep> steps;
    std::vector<std::vector<KindNoise>> noises;  // [variant][index], bound to 2 * width qubits
    std::vector<Readout> readout;
    /// Position of the step list where an error on the operation's output sits.
    size_t inject_at = 0;

    size_t qubit_count() const {
        return 2 * width;
    }
    /// Returns a copy with a Pauli on the logical qubits inserted at inject_at.
    SamplerCircuit with_injected(const PauliString &local) const;
    /// Exact Pauli distribution (dense over 4^width).
    std::vector<double> exact(size_t variant) const;
    /// One trajectory: outcomes in readout order, XX then ZZ for Bell positions and one value otherwise.
    std::vector<int> sample_outcomes(size_t variant, Rng &rng) const;
    PauliString decode(const std::vector<int> &outcomes) const;
    PauliString sample(size_t variant, Rng &rng) const {
        return decode(sample_outcomes(variant, rng));
    }

   private:
    std::vector<int> outcomes_from_bits(uint64_t bits) const;
};

/// Practical error sampler: per kind, the Bell-pair sampler circuit with decode noise, the noisy
/// operation and encode noise; per non-measurement kind, the encode/decode-only circuit.
class PracticalSampler {
   public:
    PracticalSampler(const CompiledCircuit &cc, const NoiseModel &model);

    size_t kind_count() const {
        return circuits_.size();
    }
    size_t variant_count() const {
        return weights_.size();
    }
    const SamplerCircuit &circuit(size_t kind) const {
        return circuits_[kind];
    }
    /// Encode/decode-only circuit, or null for measurement kinds.
    const SamplerCircuit *endecode_circuit(size_t kind) const {
        return endecode_[kind] ? &*endecode_[kind] : nullptr;
    }
    PauliString sample_trajectory(size_t kind, size_t variant, Rng &rng) const {
        return circuits_[kind].sample(variant, rng);
    }
    /// Spacetime sampler built from the exact output distributions of all sampler circuits.
    SpacetimeSampler spacetime_sampler() const;

   private:
    std::shared_ptr<const SpacetimeLayout> layout_;
    std::vector<SamplerCircuit> circuits_;
    std::vector<std::optional<SamplerCircuit>> endecode_;
    std::vector<double> weights_;
};

/// Builds the sampler circuit of one operation (global qubits) whose noise acts on `noisy_support`.
SamplerCircuit build_sampler_circuit(const Operation &op, const std::vector<size_t> &noisy_support,
                                     const NoiseModel &model);
/// Encode/decode-only circuit on m qubits.
SamplerCircuit build_endecode_circuit(const std::vector<size_t> &support, const NoiseModel &model);

}  // namespace sni

#endif
