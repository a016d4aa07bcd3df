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

#include "sni/circuit.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sni/errors.h"

namespace sni {

namespace {

constexpr size_t kMaxTwirlSupport = 4;

const Complex kI(0, 1);

std::string qubit_list(const std::vector<size_t> &qubits) {
    std::string s = "(";
    for (size_t k = 0; k < qubits.size(); k++) {
        s += (k ? "," : "") + std::to_string(qubits[k]);
    }
    return s + ")";
}

std::string part_key(const OpPart &p, OpType type) {
    switch (type) {
        case OpType::Prepare:
            return "prepare[" + p.basis + "]" + qubit_list(p.qubits);
        case OpType::Measure:
            return "measure[" + p.basis + "]" + qubit_list(p.qubits);
        default:
            return p.name + qubit_list(p.qubits);
    }
}

Matrix gate_matrix(const std::string &name) {
    Matrix m;
    const double r = 1 / std::sqrt(2.0);
    if (name == "I" || name == "delay") {
        m = Matrix::Identity(2, 2);
    } else if (name == "X" || name == "Y" || name == "Z") {
        m = pauli_matrix(PauliString::from_text(name));
    } else if (name == "H") {
        m.resize(2, 2);
        m << r, r, r, -r;
    } else if (name == "S") {
        m.resize(2, 2);
        m << 1, 0, 0, kI;
    } else if (name == "Sdg") {
        m.resize(2, 2);
        m << 1, 0, 0, -kI;
    } else if (name == "T") {
        m.resize(2, 2);
        m << 1, 0, 0, std::exp(kI * M_PI / 4.0);
    } else if (name == "Tdg") {
        m.resize(2, 2);
        m << 1, 0, 0, std::exp(-kI * M_PI / 4.0);
    } else if (name == "SX") {
        m.resize(2, 2);
        m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
    } else if (name == "CNOT" || name == "CX") {
        // Local qubit 0 is the control.
        m = Matrix::Zero(4, 4);
        for (size_t c = 0; c < 2; c++) {
            for (size_t t = 0; t < 2; t++) {
                m(c + 2 * (t ^ c), c + 2 * t) = 1;
            }
        }
    } else if (name == "CZ") {
        m = Matrix::Identity(4, 4);
        m(3, 3) = -1;
    } else if (name == "SWAP") {
        m = Matrix::Zero(4, 4);
        m(0, 0) = m(3, 3) = 1;
        m(1, 2) = m(2, 1) = 1;
    } else {
        throw ConfigError("unknown gate '" + name + "'");
    }
    return m;
}

/// Embeds a matrix acting on part_qubits into the space of `support` (both global labels).
Matrix embed(const Matrix &m, const std::vector<size_t> &part_qubits, const std::vector<size_t> &support) {
    std::vector<size_t> pos;
    for (size_t q : part_qubits) {
        auto it = std::find(support.begin(), support.end(), q);
        if (it == support.end()) {
            throw DimensionError("part qubit outside of support");
        }
        pos.push_back(it - support.begin());
    }
    size_t dim = size_t(1) << support.size();
    size_t mask = 0;
    for (size_t p : pos) {
        mask |= size_t(1) << p;
    }
    auto sub = [&](size_t i) {
        size_t s = 0;
        for (size_t k = 0; k < pos.size(); k++) {
            s |= ((i >> pos[k]) & 1) << k;
        }
        return s;
    };
    Matrix full = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < dim; i++) {
        for (size_t j = 0; j < dim; j++) {
            if ((i & ~mask) == (j & ~mask)) {
                full(i, j) = m(sub(i), sub(j));
            }
        }
    }
    return full;
}

Matrix unitary_on(const Operation &op, const std::vector<size_t> &support) {
    Matrix u = Matrix::Identity(size_t(1) << support.size(), size_t(1) << support.size());
    for (const auto &part : op.parts) {
        u = embed(part.matrix, part.qubits, support) * u;
    }
    return u;
}

PauliString pauli_on(const PauliString &local, const std::vector<size_t> &support, size_t n) {
    return local.embedded(n, support);
}

void finish_operation(Operation &op, const std::string &tag) {
    op.klass = OpClass::Pauli;
    std::string key;
    std::set<std::string> names;
    for (const auto &p : op.parts) {
        op.klass = std::max(op.klass, p.klass);
        key += (key.empty() ? "" : "|") + part_key(p, op.type);
        names.insert(op.type == OpType::Prepare ? "prepare" : op.type == OpType::Measure ? "measure" : p.name);
    }
    op.key = key;
    if (!tag.empty()) {
        op.noise_tag = tag;
    } else {
        std::string t;
        for (const auto &n : names) {
            t += (t.empty() ? "" : "+") + n;
        }
        op.noise_tag = t;
    }
}

}  // namespace

const char *op_class_name(OpClass c) {
    switch (c) {
        case OpClass::Pauli:
            return "Pauli";
        case OpClass::Stabilizer:
            return "Stabilizer";
        default:
            return "NonStabilizer";
    }
}

std::vector<size_t> Operation::support() const {
    std::vector<size_t> s;
    for (const auto &p : parts) {
        s.insert(s.end(), p.qubits.begin(), p.qubits.end());
    }
    std::sort(s.begin(), s.end());
    return s;
}

Matrix Operation::local_unitary() const {
    if (type != OpType::Gate) {
        throw ContractError("local_unitary is only defined for gates");
    }
    return unitary_on(*this, support());
}

Matrix basis_operator(const std::string &basis) {
    const double r = 1 / std::sqrt(2.0);
    if (basis == "Z" || basis == "X" || basis == "Y") {
        return pauli_matrix(PauliString::from_text(basis));
    }
    if (basis == "A") {
        return r * (pauli_matrix(Letter::X) + pauli_matrix(Letter::Y));
    }
    if (basis == "XZ") {
        return r * (pauli_matrix(Letter::X) + pauli_matrix(Letter::Z));
    }
    if (basis == "YZ") {
        return r * (pauli_matrix(Letter::Y) + pauli_matrix(Letter::Z));
    }
    throw ConfigError("unknown basis '" + basis + "'");
}

PauliString basis_flip_pauli(const std::string &basis) {
    if (basis == "Z") {
        return PauliString::from_text("X");
    }
    if (basis == "X" || basis == "Y" || basis == "A") {
        return PauliString::from_text("Z");
    }
    if (basis == "XZ") {
        return PauliString::from_text("Y");
    }
    if (basis == "YZ") {
        return PauliString::from_text("X");
    }
    throw ConfigError("unknown basis '" + basis + "'");
}

OpClass classify_unitary(const Matrix &u) {
    if (identify_pauli(u)) {
        return OpClass::Pauli;
    }
    if (clifford_images(u)) {
        return OpClass::Stabilizer;
    }
    return OpClass::NonStabilizer;
}

Operation make_unitary(const std::string &name, std::vector<size_t> qubits, const Matrix &u) {
    if ((size_t)u.rows() != (size_t(1) << qubits.size()) || !is_unitary(u)) {
        throw ConfigError("gate '" + name + "' needs a unitary matching " + std::to_string(qubits.size()) +
                          " qubits");
    }
    std::set<size_t> distinct(qubits.begin(), qubits.end());
    if (distinct.size() != qubits.size()) {
        throw ConfigError("gate '" + name + "' repeats a qubit");
    }
    Operation op;
    op.type = OpType::Gate;
    OpPart part;
    part.name = name;
    part.qubits = std::move(qubits);
    part.matrix = u;
    part.klass = name == "delay" ? OpClass::Stabilizer : classify_unitary(u);
    op.parts.push_back(std::move(part));
    finish_operation(op, "");
    return op;
}

Operation make_gate(const std::string &name, std::vector<size_t> qubits) {
    Matrix m = gate_matrix(name);
    if ((size_t)m.rows() != (size_t(1) << qubits.size())) {
        throw ConfigError("gate '" + name + "' applied to " + std::to_string(qubits.size()) + " qubits");
    }
    return make_unitary(name == "CX" ? "CNOT" : name, std::move(qubits), m);
}

Operation make_pauli(const PauliString &p, std::vector<size_t> qubits) {
    if (p.size() != qubits.size()) {
        throw DimensionError("Pauli gate size does not match its qubits");
    }
    return make_unitary(p.str(), std::move(qubits), pauli_matrix(p));
}

Operation make_prepare(const std::string &basis, size_t qubit) {
    Operation op;
    op.type = OpType::Prepare;
    OpPart part;
    part.name = "prepare";
    part.basis = basis;
    part.qubits = {qubit};
    part.matrix = basis_operator(basis);
    part.flip = basis_flip_pauli(basis);
    part.klass = identify_pauli(part.matrix) ? OpClass::Stabilizer : OpClass::NonStabilizer;
    op.parts.push_back(std::move(part));
    finish_operation(op, "");
    return op;
}

Operation make_measure(const std::string &basis, size_t qubit, std::string label) {
    Operation op = make_prepare(basis, qubit);
    op.type = OpType::Measure;
    op.parts[0].name = "measure";
    op.parts[0].label = std::move(label);
    finish_operation(op, "");
    return op;
}

Operation make_layer(const std::vector<Operation> &ops, std::string tag) {
    if (ops.empty()) {
        throw ConfigError("empty layer");
    }
    Operation layer;
    layer.type = ops[0].type;
    std::set<size_t> used;
    for (const auto &op : ops) {
        if (op.type != layer.type) {
            throw ConfigError("a layer mixes gates, preparations and measurements");
        }
        for (const auto &p : op.parts) {
            for (size_t q : p.qubits) {
                if (!used.insert(q).second) {
                    throw ConfigError("layer operations overlap on qubit " + std::to_string(q));
                }
            }
            layer.parts.push_back(p);
        }
    }
    finish_operation(layer, tag);
    return layer;
}

bool Condition::holds(int lambda, std::span<const int8_t> outcomes_so_far) const {
    if (!lambdas.empty() && std::find(lambdas.begin(), lambdas.end(), lambda) == lambdas.end()) {
        return false;
    }
    for (const auto &[index, value] : outcomes) {
        if (outcomes_so_far[index] != value) {
            return false;
        }
    }
    return true;
}

RandomizedDynamicCircuit::RandomizedDynamicCircuit(size_t qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count > PauliString::kMaxQubits) {
        throw ScaleError("too many qubits");
    }
}

void RandomizedDynamicCircuit::set_lambda_weights(std::vector<double> weights) {
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw ConfigError("lambda weights must be nonnegative");
        }
        total += w;
    }
    if (weights.empty() || !(total > 0)) {
        throw ConfigError("lambda weights must have a positive sum");
    }
    for (double &w : weights) {
        w /= total;
    }
    lambda_weights_ = std::move(weights);
}

void RandomizedDynamicCircuit::append(Operation op, bool twirl, std::optional<Condition> when) {
    for (size_t q : op.support()) {
        if (q >= qubit_count_) {
            throw ConfigError("operation " + op.key + " acts outside of the " + std::to_string(qubit_count_) +
                              " circuit qubits");
        }
    }
    if (when) {
        for (const auto &[index, value] : when->outcomes) {
            if (index >= labels_.size()) {
                throw ConfigError("condition refers to a measurement that has not happened yet");
            }
            if (value != 1 && value != -1) {
                throw ConfigError("condition outcomes must be +1 or -1");
            }
        }
    }
    if (op.type == OpType::Measure) {
        for (auto &p : op.parts) {
            if (p.label.empty()) {
                p.label = "m" + std::to_string(labels_.size());
            }
            if (std::find(labels_.begin(), labels_.end(), p.label) != labels_.end()) {
                throw ConfigError("duplicate measurement label '" + p.label + "'");
            }
            p.outcome = labels_.size();
            labels_.push_back(p.label);
        }
    }
    slots_.push_back(Slot{std::move(op), twirl, std::move(when)});
}

size_t RandomizedDynamicCircuit::outcome_index(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw ConfigError("unknown measurement label '" + label + "'");
    }
    return it - labels_.begin();
}

void RandomizedDynamicCircuit::set_twirl_all(bool twirl) {
    for (auto &s : slots_) {
        s.twirl = twirl;
    }
}

Observable::Observable(std::vector<std::vector<ObservableTerm>> per_lambda) : per_lambda_(std::move(per_lambda)) {}

void Observable::set_table_entry(int lambda, std::vector<int8_t> outcomes, double value) {
    table_[{lambda, std::move(outcomes)}] = value;
}

double Observable::evaluate(int lambda, std::span<const int8_t> outcomes) const {
    if (lambda >= 0 && (size_t)lambda < per_lambda_.size() && !per_lambda_[lambda].empty()) {
        double total = 0;
        for (const auto &t : per_lambda_[lambda]) {
            double v = t.coefficient;
            for (size_t k : t.outcomes) {
                v *= outcomes[k];
            }
            total += v;
        }
        return total;
    }
    auto it = table_.find({lambda, std::vector<int8_t>(outcomes.begin(), outcomes.end())});
    return it == table_.end() ? 0.0 : it->second;
}

std::vector<size_t> Observable::referenced_outcomes() const {
    std::set<size_t> s;
    for (const auto &terms : per_lambda_) {
        for (const auto &t : terms) {
            s.insert(t.outcomes.begin(), t.outcomes.end());
        }
    }
    for (const auto &[key, v] : table_) {
        for (size_t k = 0; k < key.second.size(); k++) {
            s.insert(k);
        }
    }
    return {s.begin(), s.end()};
}

double Observable::sup_norm() const {
    if (!sup_norm_) {
        throw ContractError("observable sup norm has not been computed");
    }
    return *sup_norm_;
}

Observable append_pauli_sum_measurement(RandomizedDynamicCircuit &circuit, const std::vector<PauliTerm> &terms) {
    if (circuit.lambda_count() != 1) {
        throw ConfigError("Pauli-sum observables need a circuit without its own lambda table");
    }
    if (terms.empty()) {
        throw ConfigError("empty Pauli-sum observable");
    }
    size_t count = terms.size();
    circuit.set_lambda_weights(std::vector<double>(count, 1.0));
    std::vector<std::vector<ObservableTerm>> per_lambda(count);
    for (size_t t = 0; t < count; t++) {
        const auto &term = terms[t];
        if (term.pauli.size() != circuit.qubit_count()) {
            throw ConfigError("Pauli-sum term " + term.pauli.str() + " does not match the circuit size");
        }
        ObservableTerm ot{term.coefficient * (double)count, {}};
        for (size_t q = 0; q < term.pauli.size(); q++) {
            Letter l = term.pauli.letter(q);
            if (l == Letter::I) {
                continue;
            }
            std::string label = "obs" + std::to_string(t) + "_q" + std::to_string(q);
            circuit.append(make_measure(std::string(1, letter_char(l)), q, label), false,
                           Condition{{(int)t}, {}});
            ot.outcomes.push_back(circuit.outcome_index(label));
        }
        per_lambda[t].push_back(ot);
    }
    return Observable(std::move(per_lambda));
}

CompiledCircuit::CompiledCircuit(RandomizedDynamicCircuit circuit, TwirlOptions options)
    : circuit_(std::move(circuit)), options_(options) {
    size_t n = circuit_.qubit_count();
    for (const auto &slot : circuit_.slots()) {
        const Operation &alpha = slot.op;
        Plan plan;
        plan.support = alpha.support();
        size_t m = plan.support.size();
        if (alpha.is_pauli()) {
            auto p = identify_pauli(alpha.local_unitary());
            plan.p_global.push_back(pauli_on(*p, plan.support, n));
            plans_.push_back(std::move(plan));
            continue;
        }
        plan.alpha_kind = intern_kind(alpha, alpha.key);
        plan.possible_kinds.push_back(plan.alpha_kind);
        if (!slot.twirl) {
            plans_.push_back(std::move(plan));
            continue;
        }
        if (m > kMaxTwirlSupport) {
            throw ScaleError("twirling is limited to operations on at most 4 qubits");
        }
        size_t n_paulis = size_t(1) << (2 * m);
        bool stabilizer = alpha.klass == OpClass::Stabilizer;
        if (alpha.type == OpType::Gate) {
            for (size_t r = 0; r < n_paulis; r++) {
                plan.p_global.push_back(pauli_on(PauliString::from_index(m, r), plan.support, n));
            }
            if (stabilizer) {
                plan.row = TwirlRow::StabilizerGate;
                auto images = clifford_images(alpha.local_unitary());
                for (size_t r = 0; r < n_paulis; r++) {
                    PauliString local = conjugate_by_images(*images, PauliString::from_index(m, r));
                    plan.conj_images.push_back(pauli_on(local, plan.support, n));
                }
            } else {
                plan.row = TwirlRow::NonStabilizerGate;
                // V = alpha^dag P alpha, built part by part so layers keep their structure.
                std::vector<Operation> vs(n_paulis);
                for (size_t r = 0; r < n_paulis; r++) {
                    PauliString local = PauliString::from_index(m, r);
                    Operation v;
                    v.type = OpType::Gate;
                    for (const auto &part : alpha.parts) {
                        std::vector<size_t> pos;
                        for (size_t q : part.qubits) {
                            pos.push_back(std::find(plan.support.begin(), plan.support.end(), q) -
                                          plan.support.begin());
                        }
                        Matrix pm = pauli_matrix(local.restricted(pos));
                        OpPart vp;
                        vp.name = "V";
                        vp.qubits = part.qubits;
                        vp.matrix = part.matrix.adjoint() * pm * part.matrix;
                        vp.klass = classify_unitary(vp.matrix);
                        if (vp.klass == OpClass::NonStabilizer) {
                            throw ConfigError("operation " + alpha.key +
                                              " is outside the third level of the Clifford hierarchy");
                        }
                        v.parts.push_back(std::move(vp));
                    }
                    finish_operation(v, "V");
                    vs[r] = std::move(v);
                }
                plan.cliffords = std::move(vs);
            }
        } else {
            size_t n_choices = size_t(1) << m;
            if (stabilizer) {
                plan.row = alpha.type == OpType::Prepare ? TwirlRow::StabilizerPrepare : TwirlRow::StabilizerMeasure;
                for (size_t b = 0; b < n_choices; b++) {
                    PauliString local(m);
                    for (size_t k = 0; k < alpha.parts.size(); k++) {
                        if ((b >> k) & 1) {
                            auto pk = identify_pauli(alpha.parts[k].matrix);
                            size_t pos = std::find(plan.support.begin(), plan.support.end(), alpha.parts[k].qubits[0]) -
                                         plan.support.begin();
                            local.set(pos, pk->letter(0));
                        }
                    }
                    plan.p_global.push_back(pauli_on(local, plan.support, n));
                }
            } else {
                plan.row =
                    alpha.type == OpType::Prepare ? TwirlRow::NonStabilizerPrepare : TwirlRow::NonStabilizerMeasure;
                for (size_t b = 0; b < n_choices; b++) {
                    Operation k_op;
                    k_op.type = OpType::Gate;
                    for (size_t k = 0; k < alpha.parts.size(); k++) {
                        OpPart kp;
                        kp.name = "V";
                        kp.qubits = alpha.parts[k].qubits;
                        kp.matrix = (b >> k) & 1 ? alpha.parts[k].matrix : Matrix::Identity(2, 2);
                        kp.klass = classify_unitary(kp.matrix);
                        k_op.parts.push_back(std::move(kp));
                    }
                    finish_operation(k_op, "V");
                    plan.cliffords.push_back(std::move(k_op));
                }
            }
        }
        if (!plan.cliffords.empty()) {
            for (size_t r = 0; r < n_paulis; r++) {
                plan.p2_global.push_back(pauli_on(PauliString::from_index(m, r), plan.support, n));
            }
            size_t choices = plan.cliffords.size();
            plan.clifford_kinds.assign(choices, -1);
            plan.clifford_as_pauli.assign(choices, PauliString(n));
            // Visit the all-ones choice first so it becomes the representative of a grouped kind.
            std::vector<size_t> order;
            size_t preferred = choices - 1;
            if (alpha.type == OpType::Gate) {
                preferred = 0;
                for (size_t k = 0; k < m; k++) {
                    preferred |= size_t(1) << (2 * k);  // X on every qubit
                }
            }
            order.push_back(preferred);
            for (size_t r = 0; r < choices; r++) {
                if (r != preferred) {
                    order.push_back(r);
                }
            }
            std::string prefix = alpha.type == OpType::Gate ? "V<" : "K<";
            for (size_t r : order) {
                Operation &c = plan.cliffords[r];
                Matrix local = unitary_on(c, plan.support);
                if (c.klass == OpClass::Pauli) {
                    plan.clifford_as_pauli[r] = pauli_on(*identify_pauli(local), plan.support, n);
                } else {
                    std::string key = prefix + alpha.key + ">";
                    if (!options_.group_twirl_cliffords) {
                        key += alpha.type == OpType::Gate ? PauliString::from_index(m, r).str() : std::to_string(r);
                    }
                    c.key = key;
                    plan.clifford_kinds[r] = intern_kind(c, key);
                    if (std::find(plan.possible_kinds.begin(), plan.possible_kinds.end(), plan.clifford_kinds[r]) ==
                        plan.possible_kinds.end()) {
                        plan.possible_kinds.push_back(plan.clifford_kinds[r]);
                    }
                }
            }
            for (size_t r = 0; r < choices; r++) {
                Matrix local = unitary_on(plan.cliffords[r], plan.support);
                auto images = clifford_images(local);
                if (!images) {
                    throw ConfigError("twirl operation for " + alpha.key + " is not Clifford");
                }
                for (size_t r2 = 0; r2 < n_paulis; r2++) {
                    PauliString img = conjugate_by_images(*images, PauliString::from_index(m, r2));
                    plan.vpv.push_back(pauli_on(img, plan.support, n));
                }
            }
        }
        plans_.push_back(std::move(plan));
    }
    compute_max_counts();
}

int CompiledCircuit::intern_kind(const Operation &op, const std::string &key) {
    auto it = kind_by_key_.find(key);
    if (it != kind_by_key_.end()) {
        return it->second;
    }
    int index = (int)kinds_.size();
    Operation rep = op;
    rep.key = key;
    kinds_.push_back(KindInfo{key, std::move(rep)});
    kind_by_key_[key] = index;
    return index;
}

int CompiledCircuit::kind_index(const std::string &key) const {
    auto it = kind_by_key_.find(key);
    return it == kind_by_key_.end() ? -1 : it->second;
}

std::vector<Step> CompiledCircuit::expand(size_t slot, Rng &rng) const {
    std::vector<Step> steps;
    expand(slot, rng, [&](const Step &s) { steps.push_back(s); });
    return steps;
}

std::vector<Step> CompiledCircuit::expand_with(size_t slot, size_t p_choice, size_t p2_choice) const {
    std::vector<Step> steps;
    emit(slot, p_choice, p2_choice, [&](const Step &s) { steps.push_back(s); });
    return steps;
}

size_t CompiledCircuit::p_choices(size_t slot) const {
    const Plan &plan = plans_[slot];
    if (!plan.cliffords.empty()) {
        return plan.cliffords.size();
    }
    return plan.row == TwirlRow::None ? 1 : plan.p_global.size();
}

size_t CompiledCircuit::p2_choices(size_t slot) const {
    return std::max<size_t>(1, plans_[slot].p2_global.size());
}

void CompiledCircuit::compute_max_counts() {
    max_counts_.assign(kinds_.size(), 0);
    try {
        enumerate_branches(circuit_, condition_labels(circuit_),
                           [&](int, const std::vector<int8_t> &, const std::vector<bool> &active) {
                               std::vector<size_t> counts(kinds_.size(), 0);
                               for (size_t s = 0; s < plans_.size(); s++) {
                                   if (active[s]) {
                                       for (int k : plans_[s].possible_kinds) {
                                           counts[k]++;
                                       }
                                   }
                               }
                               for (size_t k = 0; k < counts.size(); k++) {
                                   max_counts_[k] = std::max(max_counts_[k], counts[k]);
                               }
                           });
        max_counts_exact_ = true;
    } catch (const ScaleError &) {
        const auto &declared = circuit_.declared_max_counts();
        for (size_t k = 0; k < kinds_.size(); k++) {
            auto it = declared.find(kinds_[k].key);
            if (it == declared.end()) {
                throw ConfigError("branch space too large to enumerate and no declared maximum count for kind '" +
                                  kinds_[k].key + "'");
            }
            max_counts_[k] = it->second;
        }
        max_counts_exact_ = false;
    }
}

std::vector<size_t> condition_labels(const RandomizedDynamicCircuit &circuit) {
    std::set<size_t> s;
    for (const auto &slot : circuit.slots()) {
        if (slot.when) {
            for (const auto &o : slot.when->outcomes) {
                s.insert(o.first);
            }
        }
    }
    return {s.begin(), s.end()};
}

void enumerate_branches(const RandomizedDynamicCircuit &circuit, const std::vector<size_t> &branch_labels,
                        const std::function<void(int, const std::vector<int8_t> &, const std::vector<bool> &)> &f,
                        size_t max_branches) {
    const auto &slots = circuit.slots();
    std::vector<bool> branching(circuit.outcome_labels().size(), false);
    for (size_t k : branch_labels) {
        branching[k] = true;
    }
    size_t visited = 0;
    for (size_t lambda = 0; lambda < circuit.lambda_count(); lambda++) {
        std::vector<int8_t> outcomes(circuit.outcome_labels().size(), 0);
        std::vector<bool> active(slots.size(), false);
        std::function<void(size_t)> walk = [&](size_t s) {
            if (s == slots.size()) {
                if (++visited > max_branches) {
                    throw ScaleError("too many circuit branches to enumerate");
                }
                f((int)lambda, outcomes, active);
                return;
            }
            const Slot &slot = slots[s];
            bool on = !slot.when || slot.when->holds((int)lambda, outcomes);
            active[s] = on;
            if (!on || slot.op.type != OpType::Measure) {
                walk(s + 1);
                active[s] = false;
                return;
            }
            std::vector<size_t> idx;
            for (const auto &p : slot.op.parts) {
                idx.push_back(circuit.outcome_index(p.label));
            }
            std::vector<size_t> free;
            for (size_t k : idx) {
                if (branching[k]) {
                    free.push_back(k);
                } else {
                    outcomes[k] = 1;
                }
            }
            for (size_t mask = 0; mask < (size_t(1) << free.size()); mask++) {
                for (size_t b = 0; b < free.size(); b++) {
                    outcomes[free[b]] = (mask >> b) & 1 ? -1 : 1;
                }
                walk(s + 1);
            }
            for (size_t k : idx) {
                outcomes[k] = 0;
            }
            active[s] = false;
        };
        walk(0);
    }
}

double compute_sup_norm(const RandomizedDynamicCircuit &circuit, const Observable &observable) {
    std::set<size_t> labels;
    for (size_t k : observable.referenced_outcomes()) {
        labels.insert(k);
    }
    for (size_t k : condition_labels(circuit)) {
        labels.insert(k);
    }
    double best = 0;
    enumerate_branches(circuit, {labels.begin(), labels.end()},
                       [&](int lambda, const std::vector<int8_t> &outcomes, const std::vector<bool> &) {
                           best = std::max(best, std::abs(observable.evaluate(lambda, outcomes)));
                       });
    return best;
}

}  // namespace sni
