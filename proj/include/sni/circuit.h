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

#ifndef SNI_CIRCUIT_H
#define SNI_CIRCUIT_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sni/linalg.h"
#include "sni/pauli.h"
#include "sni/rng.h"

namespace sni {

enum class OpType : uint8_t { Gate, Prepare, Measure };
enum class OpClass : uint8_t { Pauli = 0, Stabilizer = 1, NonStabilizer = 2 };

const char *op_class_name(OpClass c);

/// A primitive operation on a few qubits. For Prepare/Measure, `matrix` is the two-outcome Hermitian
/// operator kappa whose +1 eigenstate is prepared, or which is measured.
struct OpPart {
    std::string name;
    std::string basis;
    std::vector<size_t> qubits;
    Matrix matrix;
    std::string label;
    OpClass klass = OpClass::Pauli;
    PauliString flip;                // Prepare/Measure: Pauli anticommuting with kappa
    size_t outcome = SIZE_MAX;       // Measure: index into the circuit's outcome vector
};

/// One circuit operation: a set of primitive parts of the same type acting on disjoint qubits.
/// A single gate is a one-part operation; a layer is a multi-part operation that shares one noise map.
struct Operation {
    OpType type = OpType::Gate;
    OpClass klass = OpClass::Pauli;
    std::vector<OpPart> parts;
    std::string key;
    std::string noise_tag;

    /// Sorted union of part qubits.
    std::vector<size_t> support() const;
    bool is_pauli() const {
        return klass == OpClass::Pauli;
    }
    /// Unitary on the sorted support (gates only), little-endian in support order.
    Matrix local_unitary() const;
};

/// Two-outcome operator for a basis name: Z, X, Y, A = (X+Y)/sqrt2, XZ = (X+Z)/sqrt2, YZ = (Y+Z)/sqrt2.
Matrix basis_operator(const std::string &basis);
/// Pauli that anticommutes with the basis operator; an error flipping a +1 eigenstate of it.
PauliString basis_flip_pauli(const std::string &basis);

/// Known names: I X Y Z H S Sdg T Tdg SX CNOT CZ SWAP delay.
Operation make_gate(const std::string &name, std::vector<size_t> qubits);
Operation make_unitary(const std::string &name, std::vector<size_t> qubits, const Matrix &u);
Operation make_pauli(const PauliString &p, std::vector<size_t> qubits);
Operation make_prepare(const std::string &basis, size_t qubit);
Operation make_measure(const std::string &basis, size_t qubit, std::string label);
/// Combines operations of one type on disjoint qubits into a layer.
Operation make_layer(const std::vector<Operation> &ops, std::string tag = "");

/// Classifies a unitary as Pauli, Clifford or other.
OpClass classify_unitary(const Matrix &u);

/// Slot activity rule: active iff lambda is listed (or the list is empty) and all listed outcomes match.
struct Condition {
    std::vector<int> lambdas;
    std::vector<std::pair<size_t, int>> outcomes;
    bool holds(int lambda, std::span<const int8_t> outcomes_so_far) const;
};

struct Slot {
    Operation op;
    bool twirl = false;
    std::optional<Condition> when;
};

/// Randomized dynamic circuit: slots resolved by (lambda, earlier outcomes). Outcomes are stored per
/// measurement label; 0 marks a measurement that did not execute.
class RandomizedDynamicCircuit {
   public:
    explicit RandomizedDynamicCircuit(size_t qubit_count = 0);

    size_t qubit_count() const {
        return qubit_count_;
    }
    const std::vector<double> &lambda_weights() const {
        return lambda_weights_;
    }
    void set_lambda_weights(std::vector<double> weights);
    size_t lambda_count() const {
        return lambda_weights_.size();
    }

    /// Appends a slot; measurement parts register their labels (or get "m<k>").
    void append(Operation op, bool twirl = false, std::optional<Condition> when = std::nullopt);
    const std::vector<Slot> &slots() const {
        return slots_;
    }
    const std::vector<std::string> &outcome_labels() const {
        return labels_;
    }
    size_t outcome_index(const std::string &label) const;

    const std::map<std::string, size_t> &declared_max_counts() const {
        return declared_max_counts_;
    }
    void declare_max_count(const std::string &kind, size_t count) {
        declared_max_counts_[kind] = count;
    }
    void set_twirl_all(bool twirl);

   private:
    size_t qubit_count_;
    std::vector<double> lambda_weights_{1.0};
    std::vector<Slot> slots_;
    std::vector<std::string> labels_;
    std::map<std::string, size_t> declared_max_counts_;
};

struct ObservableTerm {
    double coefficient;
    std::vector<size_t> outcomes;
};

/// a(lambda, mu): per lambda, either a sum of coefficient * product-of-outcomes terms or an explicit
/// table keyed by the full outcome vector.
class Observable {
   public:
    Observable() = default;
    explicit Observable(std::vector<std::vector<ObservableTerm>> per_lambda);

    void set_table_entry(int lambda, std::vector<int8_t> outcomes, double value);
    double evaluate(int lambda, std::span<const int8_t> outcomes) const;
    /// Labels whose values can change a(lambda, mu).
    std::vector<size_t> referenced_outcomes() const;

    double sup_norm() const;
    void set_sup_norm(double v) {
        sup_norm_ = v;
    }

   private:
    std::vector<std::vector<ObservableTerm>> per_lambda_;
    std::map<std::pair<int, std::vector<int8_t>>, double> table_;
    std::optional<double> sup_norm_;
};

/// A Pauli-sum observable sum_t c_t sigma_t measured by choosing term t with probability 1/T (lambda = t)
/// and measuring each qubit of sigma_t in its basis; a = T c_t prod(mu).
struct PauliTerm {
    double coefficient;
    PauliString pauli;
};
Observable append_pauli_sum_measurement(RandomizedDynamicCircuit &circuit, const std::vector<PauliTerm> &terms);

enum class TwirlRow : uint8_t {
    None,
    StabilizerGate,
    NonStabilizerGate,
    StabilizerPrepare,
    StabilizerMeasure,
    NonStabilizerPrepare,
    NonStabilizerMeasure,
};

/// Noise-carrying (non-Pauli) operation kind.
struct KindInfo {
    std::string key;
    Operation representative;
};

/// One element of an expanded slot: a noise-free Pauli on all qubits or a kind-indexed operation.
struct Step {
    const Operation *op = nullptr;  // null for a Pauli step
    PauliString pauli;
    int kind = -1;  // -1 for noise-free
};

struct TwirlOptions {
    /// Twirl Cliffords generated from the same operation share one kind (and one noise map).
    bool group_twirl_cliffords = true;
};

/// A circuit prepared for execution: kinds, per-slot Table-1 expansions and maximum counts.
class CompiledCircuit {
   public:
    CompiledCircuit(RandomizedDynamicCircuit circuit, TwirlOptions options = {});

    const RandomizedDynamicCircuit &circuit() const {
        return circuit_;
    }
    size_t qubit_count() const {
        return circuit_.qubit_count();
    }
    const std::vector<KindInfo> &kinds() const {
        return kinds_;
    }
    int kind_index(const std::string &key) const;
    /// N_alpha^max for each kind (same order as kinds()).
    const std::vector<size_t> &max_counts() const {
        return max_counts_;
    }
    bool max_counts_exact() const {
        return max_counts_exact_;
    }
    TwirlRow row(size_t slot) const {
        return plans_[slot].row;
    }

    /// Calls f(step) for each step of the slot's expansion, drawing twirl Paulis from rng.
    template <typename F>
    void expand(size_t slot, Rng &rng, F &&f) const;
    /// The full list of steps for one draw (test helper).
    std::vector<Step> expand(size_t slot, Rng &rng) const;
    /// Steps for an explicit choice of (P, P') indices.
    std::vector<Step> expand_with(size_t slot, size_t p_choice, size_t p2_choice) const;
    size_t p_choices(size_t slot) const;
    size_t p2_choices(size_t slot) const;

    /// Kinds any expansion of the slot can produce (each at most once per expansion).
    const std::vector<int> &possible_kinds(size_t slot) const {
        return plans_[slot].possible_kinds;
    }

   private:
    struct Plan {
        TwirlRow row = TwirlRow::None;
        int alpha_kind = -1;
        std::vector<size_t> support;
        std::vector<PauliString> p_global;           // P choices (Pauli rows), on all qubits
        std::vector<PauliString> conj_images;         // StabilizerGate: alpha^dag P alpha
        std::vector<PauliString> p2_global;           // P' choices (NonStabilizer rows)
        std::vector<PauliString> vpv;                 // [r * |P'| + r2]: conjugated P'
        std::vector<Operation> cliffords;              // NonStabilizer rows: Clifford per P choice
        std::vector<int> clifford_kinds;               // -1 when that choice is a Pauli
        std::vector<PauliString> clifford_as_pauli;
        std::vector<int> possible_kinds;
    };

    template <typename F>
    void emit(size_t slot, size_t r, size_t r2, F &&f) const;
    int intern_kind(const Operation &op, const std::string &key);
    void compute_max_counts();

    RandomizedDynamicCircuit circuit_;
    TwirlOptions options_;
    std::vector<KindInfo> kinds_;
    std::map<std::string, int> kind_by_key_;
    std::vector<Plan> plans_;
    std::vector<size_t> max_counts_;
    bool max_counts_exact_ = true;
};

/// Visits every branch (lambda, outcome assignment) of a circuit. Outcomes not in `branch_labels` are
/// fixed to +1 when executed. `f(lambda, outcomes, active)` receives the per-slot activity mask.
/// Throws ScaleError past `max_branches`.
void enumerate_branches(const RandomizedDynamicCircuit &circuit, const std::vector<size_t> &branch_labels,
                        const std::function<void(int, const std::vector<int8_t> &, const std::vector<bool> &)> &f,
                        size_t max_branches = size_t(1) << 20);

/// Labels referenced by slot conditions.
std::vector<size_t> condition_labels(const RandomizedDynamicCircuit &circuit);

/// max over enumerated branches of |a(lambda, mu)|.
double compute_sup_norm(const RandomizedDynamicCircuit &circuit, const Observable &observable);

template <typename F>
void CompiledCircuit::expand(size_t slot, Rng &rng, F &&f) const {
    const Plan &plan = plans_[slot];
    size_t r = 0, r2 = 0;
    switch (plan.row) {
        case TwirlRow::None:
            break;
        case TwirlRow::StabilizerGate:
        case TwirlRow::StabilizerPrepare:
        case TwirlRow::StabilizerMeasure:
            r = rng() % plan.p_global.size();
            break;
        default:
            r = rng() % plan.cliffords.size();
            r2 = rng() % plan.p2_global.size();
            break;
    }
    emit(slot, r, r2, f);
}

template <typename F>
void CompiledCircuit::emit(size_t slot, size_t r, size_t r2, F &&f) const {
    const Plan &plan = plans_[slot];
    const Operation &alpha = circuit_.slots()[slot].op;
    Step step;
    auto emit_pauli = [&](const PauliString &p) {
        if (!p.is_identity()) {
            step.op = nullptr;
            step.kind = -1;
            step.pauli = p;
            f(step);
        }
    };
    auto emit_alpha = [&]() {
        step.op = &alpha;
        step.kind = plan.alpha_kind;
        f(step);
    };
    auto emit_clifford = [&]() {
        if (plan.clifford_kinds[r] < 0) {
            emit_pauli(plan.clifford_as_pauli[r]);
        } else {
            step.op = &plan.cliffords[r];
            step.kind = plan.clifford_kinds[r];
            f(step);
        }
    };
    switch (plan.row) {
        case TwirlRow::None:
            if (alpha.is_pauli()) {
                emit_pauli(plan.p_global[0]);
            } else {
                emit_alpha();
            }
            return;
        case TwirlRow::StabilizerGate:
            emit_pauli(plan.conj_images[r]);
            emit_alpha();
            emit_pauli(plan.p_global[r]);
            return;
        case TwirlRow::NonStabilizerGate:
            emit_pauli(plan.vpv[r * plan.p2_global.size() + r2]);
            emit_clifford();
            emit_pauli(plan.p2_global[r2]);
            emit_alpha();
            emit_pauli(plan.p_global[r]);
            return;
        case TwirlRow::StabilizerPrepare:
            emit_alpha();
            emit_pauli(plan.p_global[r]);
            return;
        case TwirlRow::StabilizerMeasure:
            emit_pauli(plan.p_global[r]);
            emit_alpha();
            return;
        case TwirlRow::NonStabilizerPrepare:
            emit_alpha();
            emit_pauli(plan.vpv[r * plan.p2_global.size() + r2]);
            emit_clifford();
            emit_pauli(plan.p2_global[r2]);
            return;
        case TwirlRow::NonStabilizerMeasure:
            emit_pauli(plan.vpv[r * plan.p2_global.size() + r2]);
            emit_clifford();
            emit_pauli(plan.p2_global[r2]);
            emit_alpha();
            return;
    }
}

}  // namespace sni

#endif
