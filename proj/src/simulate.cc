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

#include "sni/simulate.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace sni {

namespace {

constexpr double kMinProbability = 1e-15;

std::vector<size_t> map_positions(const std::vector<size_t> &support, const std::vector<size_t> &positions) {
    std::vector<size_t> q;
    for (size_t p : positions) {
        if (p >= support.size()) {
            throw DimensionError("noise position outside of its support");
        }
        q.push_back(support[p]);
    }
    return q;
}

}  // namespace

KindNoise::KindNoise(std::vector<size_t> support, std::vector<NoiseElement> elements)
    : support_(std::move(support)), elements_(std::move(elements)) {
    for (const auto &e : elements_) {
        map_positions(support_, e.positions);
        size_t k = e.positions.size();
        if (e.channel) {
            if (e.channel->qubit_count() != k) {
                throw DimensionError("noise channel size does not match its positions");
            }
        } else if ((size_t)e.unitary.rows() != (size_t(1) << k) || !is_unitary(e.unitary)) {
            throw DimensionError("noise unitary does not match its positions");
        }
    }
}

void KindNoise::bind(size_t n) {
    bound_.clear();
    bound_n_ = n;
    for (const auto &e : elements_) {
        Bound b;
        b.qubits = map_positions(support_, e.positions);
        for (size_t q : b.qubits) {
            if (q >= n) {
                throw DimensionError("noise acts outside of the register");
            }
        }
        if (e.channel) {
            b.is_channel = true;
            std::vector<double> w;
            for (const auto &[p, prob] : e.channel->terms()) {
                b.paulis.push_back(p.embedded(n, b.qubits));
                w.push_back(prob);
            }
            b.alias = AliasTable(w);
        } else {
            b.unitary = e.unitary;
        }
        bound_.push_back(std::move(b));
    }
}

void KindNoise::apply(PureState &s, Rng &rng) const {
    if (elements_.empty()) {
        return;
    }
    if (bound_n_ != s.qubit_count() || bound_.size() != elements_.size()) {
        throw ContractError("kind noise is not bound to this register size");
    }
    for (const auto &b : bound_) {
        if (b.is_channel) {
            const PauliString &p = b.paulis[b.alias.sample(rng)];
            if (!p.is_identity()) {
                s.apply_pauli(p);
            }
        } else {
            s.apply_unitary(b.unitary, b.qubits);
        }
    }
}

void KindNoise::apply(DensityState &s) const {
    for (const auto &e : elements_) {
        auto qubits = map_positions(support_, e.positions);
        if (e.channel) {
            s.apply_channel(e.channel->with_support(qubits));
        } else {
            s.apply_unitary(e.unitary, qubits);
        }
    }
}

PauliChannel KindNoise::twirled() const {
    size_t m = support_.size();
    if (m > 6) {
        throw ScaleError("noise support too large to twirl exactly");
    }
    KindNoise local = relabeled(default_support(m));
    size_t count = size_t(1) << (2 * m);
    double d = double(size_t(1) << m);
    std::vector<double> fidelities(count);
    for (size_t i = 0; i < count; i++) {
        PauliString sigma = PauliString::from_index(m, i);
        Matrix sm = pauli_matrix(sigma);
        DensityState op = DensityState::from_matrix(sm);
        local.apply(op);
        fidelities[i] = (sm * op.matrix()).trace().real() / d;
    }
    SignedPauliMap probs = from_pauli_fidelities(support_, fidelities);
    std::vector<double> dense = probs.dense();
    for (double &p : dense) {
        if (p < 0 && p > -1e-12) {
            p = 0;
        }
    }
    return PauliChannel::from_dense(support_, dense);
}

KindNoise KindNoise::relabeled(std::vector<size_t> support) const {
    if (support.size() != support_.size()) {
        throw DimensionError("relabeled support has a different size");
    }
    return KindNoise(std::move(support), elements_);
}

NoiseTable noiseless_table(const CompiledCircuit &cc) {
    NoiseTable t;
    for (const auto &k : cc.kinds()) {
        t.emplace_back(k.representative.support(), std::vector<NoiseElement>{});
    }
    return t;
}

void apply_ideal_gate(PureState &s, const Operation &op) {
    for (const auto &p : op.parts) {
        s.apply_unitary(p.matrix, p.qubits);
    }
}

int sample_lambda(const RandomizedDynamicCircuit &c, Rng &rng) {
    const auto &w = c.lambda_weights();
    if (w.size() == 1) {
        return 0;
    }
    double u = uniform01(rng);
    double acc = 0;
    for (size_t k = 0; k < w.size(); k++) {
        acc += w[k];
        if (u < acc) {
            return (int)k;
        }
    }
    return (int)w.size() - 1;
}

namespace {

struct DBranch {
    DensityState rho;
    std::vector<int8_t> outcomes;
    std::vector<uint32_t> counters;
};

using BranchKey = std::pair<std::vector<int8_t>, std::vector<uint32_t>>;

void merge_into(std::vector<DBranch> &out, std::map<BranchKey, size_t> &index, DBranch &&b) {
    BranchKey key{b.outcomes, b.counters};
    auto it = index.find(key);
    if (it == index.end()) {
        index.emplace(std::move(key), out.size());
        out.push_back(std::move(b));
    } else {
        out[it->second].rho += b.rho;
    }
}

}  // namespace

std::vector<Branch> exact_distribution(const CompiledCircuit &cc, const NoiseTable &noise,
                                       const ExactOptions &options) {
    const auto &circuit = cc.circuit();
    const size_t n = circuit.qubit_count();
    if (n > 8) {
        throw ScaleError("exact evaluation is limited to 8 qubits");
    }
    if (noise.size() != cc.kinds().size()) {
        throw DimensionError("noise table does not match the circuit kinds");
    }
    const size_t label_count = circuit.outcome_labels().size();
    std::vector<bool> tracked(label_count, !options.tracked.has_value());
    if (options.tracked) {
        for (size_t k : *options.tracked) {
            tracked.at(k) = true;
        }
    }
    for (size_t k : condition_labels(circuit)) {
        tracked[k] = true;
    }
    const SpacetimeError *ins = options.insertion;
    if (ins && ins->layout().kind_count() != cc.kinds().size()) {
        throw DimensionError("insertion layout does not match the circuit kinds");
    }

    auto apply_insert = [&](DBranch &b, int kind) {
        uint32_t index = b.counters[kind]++;
        if (!ins) {
            return;
        }
        const auto &entry = ins->layout().entries()[kind];
        if (index >= entry.slots) {
            throw ContractError("inserted error exhausted for kind " + cc.kinds()[kind].key);
        }
        const PauliString &cell = ins->cell(kind, index);
        if (!cell.is_identity()) {
            b.rho.apply_pauli(cell.embedded(n, noise[kind].support()));
        }
    };

    // Applies one step to every branch in `list`, splitting on tracked measurements.
    auto apply_step = [&](std::vector<DBranch> &list, const Step &step) {
        if (!step.op) {
            for (auto &b : list) {
                b.rho.apply_pauli(step.pauli);
            }
            return;
        }
        const Operation &op = *step.op;
        const int kind = step.kind;
        if (op.type != OpType::Measure) {
            for (auto &b : list) {
                for (const auto &p : op.parts) {
                    if (op.type == OpType::Gate) {
                        b.rho.apply_unitary(p.matrix, p.qubits);
                    } else {
                        b.rho.prepare(p.matrix, p.flip, p.qubits[0]);
                    }
                }
                noise[kind].apply(b.rho);
                apply_insert(b, kind);
            }
            return;
        }
        for (auto &b : list) {
            apply_insert(b, kind);
            noise[kind].apply(b.rho);
        }
        for (const auto &p : op.parts) {
            std::vector<DBranch> next;
            for (auto &b : list) {
                DensityState plus = b.rho.project(p.matrix, p.qubits[0], 1);
                DensityState minus = b.rho.project(p.matrix, p.qubits[0], -1);
                if (!tracked[p.outcome]) {
                    plus += minus;
                    b.rho = std::move(plus);
                    next.push_back(std::move(b));
                    continue;
                }
                if (plus.real_trace() > kMinProbability) {
                    DBranch c{std::move(plus), b.outcomes, b.counters};
                    c.outcomes[p.outcome] = 1;
                    next.push_back(std::move(c));
                }
                if (minus.real_trace() > kMinProbability) {
                    DBranch c{std::move(minus), std::move(b.outcomes), std::move(b.counters)};
                    c.outcomes[p.outcome] = -1;
                    next.push_back(std::move(c));
                }
            }
            list.swap(next);
        }
        if (list.size() > options.max_branches) {
            throw ScaleError("too many branches in exact evaluation");
        }
    };

    std::map<std::pair<int, std::vector<int8_t>>, double> acc;
    for (size_t lambda = 0; lambda < circuit.lambda_count(); lambda++) {
        double w = circuit.lambda_weights()[lambda];
        if (w <= 0) {
            continue;
        }
        std::vector<DBranch> branches;
        branches.push_back(DBranch{DensityState(n), std::vector<int8_t>(label_count, 0),
                                   std::vector<uint32_t>(cc.kinds().size(), 0)});
        for (size_t s = 0; s < circuit.slots().size(); s++) {
            const Slot &slot = circuit.slots()[s];
            std::vector<DBranch> out;
            std::map<BranchKey, size_t> index;
            for (auto &b : branches) {
                if (slot.when && !slot.when->holds((int)lambda, b.outcomes)) {
                    merge_into(out, index, std::move(b));
                    continue;
                }
                bool average = options.average_twirl && cc.row(s) != TwirlRow::None;
                size_t n1 = average ? cc.p_choices(s) : 1;
                size_t n2 = average ? cc.p2_choices(s) : 1;
                double scale = 1.0 / double(n1 * n2);
                for (size_t r = 0; r < n1; r++) {
                    for (size_t r2 = 0; r2 < n2; r2++) {
                        std::vector<DBranch> sub;
                        sub.push_back(b);
                        for (const auto &step : cc.expand_with(s, r, r2)) {
                            apply_step(sub, step);
                        }
                        for (auto &c : sub) {
                            if (scale != 1.0) {
                                c.rho.scale(scale);
                            }
                            merge_into(out, index, std::move(c));
                        }
                    }
                }
            }
            branches.swap(out);
        }
        for (const auto &b : branches) {
            acc[{(int)lambda, b.outcomes}] += w * b.rho.real_trace();
        }
    }
    std::vector<Branch> result;
    for (const auto &[key, p] : acc) {
        result.push_back(Branch{key.first, key.second, p});
    }
    return result;
}

double exact_expectation(const CompiledCircuit &cc, const NoiseTable &noise, const Observable &a,
                         bool average_twirl) {
    ExactOptions options;
    options.tracked = a.referenced_outcomes();
    options.average_twirl = average_twirl;
    double total = 0;
    for (const auto &b : exact_distribution(cc, noise, options)) {
        total += b.probability * a.evaluate(b.lambda, b.outcomes);
    }
    return total;
}

double ideal_expectation(const RandomizedDynamicCircuit &c, const Observable &a) {
    if (c.qubit_count() > 6) {
        throw ScaleError("ideal expectation is limited to 6 qubits");
    }
    RandomizedDynamicCircuit plain = c;
    plain.set_twirl_all(false);
    CompiledCircuit cc(plain);
    return exact_expectation(cc, noiseless_table(cc), a, false);
}

}  // namespace sni
