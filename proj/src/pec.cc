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

#include "sni/pec.h"

#include <algorithm>
#include <cmath>

#include "sni/errors.h"
#include "sni/simulate.h"

namespace sni {

std::string part_type(OpType type, const OpPart &part) {
    switch (type) {
        case OpType::Prepare:
            return "prepare:" + part.basis;
        case OpType::Measure:
            return "measure:" + part.basis;
        default:
            return part.name;
    }
}

SparseCounts::SparseCounts(const CompiledCircuit &cc, const SpacetimeLayout &layout) {
    if (layout.kind_count() != cc.kinds().size()) {
        throw DimensionError("layout does not match the circuit kinds");
    }
    std::map<std::string, size_t> index;
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        const Operation &rep = cc.kinds()[k].representative;
        const auto &support = layout.entries()[k].support;
        std::vector<PartRef> refs;
        for (const auto &part : rep.parts) {
            if (part.klass == OpClass::Pauli) {
                continue;
            }
            std::string t = part_type(rep.type, part);
            auto it = index.find(t);
            if (it == index.end()) {
                it = index.emplace(t, types_.size()).first;
                types_.push_back(t);
                type_qubits_.push_back(part.qubits.size());
                counts_.emplace_back(size_t(1) << (2 * part.qubits.size()), 0);
            } else if (type_qubits_[it->second] != part.qubits.size()) {
                throw ConfigError("parts of type " + t + " act on different numbers of qubits");
            }
            PartRef ref{it->second, {}};
            for (size_t q : part.qubits) {
                auto pos = std::find(support.begin(), support.end(), q);
                if (pos == support.end()) {
                    throw ConfigError("part outside its kind's noisy support");
                }
                ref.positions.push_back(size_t(pos - support.begin()));
            }
            refs.push_back(std::move(ref));
        }
        for (const auto &ref : refs) {
            occurrences_.resize(types_.size(), 0);
            occurrences_[ref.type] += layout.entries()[k].slots;
        }
        kind_parts_.push_back(std::move(refs));
        offsets_.push_back(layout.offset(k));
        slots_.push_back(layout.entries()[k].slots);
    }
}

void SparseCounts::add(const SpacetimeError &e) {
    auto cells = e.cells();
    for (size_t k = 0; k < kind_parts_.size(); k++) {
        for (size_t j = 0; j < slots_[k]; j++) {
            const PauliString &cell = cells[offsets_[k] + j];
            if (cell.is_identity()) {
                continue;
            }
            for (const auto &ref : kind_parts_[k]) {
                counts_[ref.type][cell.restricted(ref.positions).index()]++;
            }
        }
    }
    instances_++;
}

void SparseCounts::merge(const SparseCounts &other) {
    if (other.types_ != types_) {
        throw DimensionError("merging counts of different circuits");
    }
    for (size_t t = 0; t < counts_.size(); t++) {
        for (size_t i = 0; i < counts_[t].size(); i++) {
            counts_[t][i] += other.counts_[t][i];
        }
    }
    instances_ += other.instances_;
}

SparseModel SparseCounts::model() const {
    if (instances_ == 0) {
        throw EstimationError("the sparse model needs at least one sample");
    }
    SparseModel m;
    for (size_t t = 0; t < types_.size(); t++) {
        // Identity cells are not visited; their share is what remains of every occurrence.
        double total = double(occurrences_[t]) * double(instances_);
        double nontrivial = 0;
        std::vector<double> freq(counts_[t].size());
        for (size_t i = 1; i < freq.size(); i++) {
            freq[i] = double(counts_[t][i]) / total;
            nontrivial += double(counts_[t][i]);
        }
        freq[0] = (total - nontrivial) / total;
        m.channels.emplace(types_[t], PauliChannel::from_dense(default_support(type_qubits_[t]), freq));
    }
    return m;
}

SparseModel fit_sparse_model(const CompiledCircuit &cc, const SpacetimeSampler &sampler, uint64_t M_P,
                             uint64_t seed, size_t threads) {
    if (M_P == 0) {
        throw EstimationError("the sparse model needs at least one sample");
    }
    SparseCounts init(cc, sampler.layout());
    auto parts = for_each_rate_instance(sampler, M_P, seed, 0.0, threads, init,
                                        [](SparseCounts &c, const SpacetimeError &e, bool) { c.add(e); });
    SparseCounts total = init;
    for (const auto &p : parts) {
        total.merge(p);
    }
    return total.model();
}

SignedPauliMap quasi_inverse(const PauliChannel &c) {
    std::vector<double> f = pauli_fidelities(c.as_signed());
    for (double &x : f) {
        if (std::abs(x) < kSingularity) {
            throw SingularityError("Pauli channel is not invertible (fidelity " + std::to_string(x) + ")");
        }
        x = 1 / x;
    }
    return from_pauli_fidelities(c.support(), f);
}

namespace {

struct Inverse {
    std::vector<PauliString> paulis;
    std::vector<double> signs;
    AliasTable alias;
    double norm = 1;
    bool trivial = true;
};

Inverse make_inverse(const PauliChannel &c) {
    SignedPauliMap m = quasi_inverse(c);
    Inverse inv;
    std::vector<double> w;
    for (const auto &[p, x] : m.terms()) {
        if (x == 0) {
            continue;
        }
        inv.paulis.push_back(p);
        inv.signs.push_back(x > 0 ? 1.0 : -1.0);
        w.push_back(std::abs(x));
    }
    inv.norm = 0;
    for (double x : w) {
        inv.norm += x;
    }
    inv.trivial = inv.paulis.size() == 1 && inv.paulis[0].is_identity();
    inv.alias = AliasTable(w);
    return inv;
}

struct Partial {
    double sum = 0, sum_sq = 0, weight = 0;
};

}  // namespace

MitigationResult run_cpec(const CompiledCircuit &cc, const NoiseModel &noise, const SparseModel &model,
                          const SpacetimeSampler *endecode, const Observable &a, const MitigationOptions &options) {
    if (options.shots == 0) {
        throw EstimationError("cPEC needs at least one shot");
    }
    const size_t n = cc.qubit_count();
    // Per kind: (inverse, global part qubits) for each non-Pauli part.
    std::map<std::string, Inverse> inverses;
    for (const auto &[t, ch] : model.channels) {
        inverses.emplace(t, make_inverse(ch));
    }
    std::vector<std::vector<std::pair<const Inverse *, std::vector<size_t>>>> plan(cc.kinds().size());
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        const Operation &rep = cc.kinds()[k].representative;
        for (const auto &part : rep.parts) {
            if (part.klass == OpClass::Pauli) {
                continue;
            }
            auto it = inverses.find(part_type(rep.type, part));
            if (it == inverses.end()) {
                throw ConfigError("sparse model has no entry for " + part_type(rep.type, part));
            }
            if (!it->second.trivial) {
                plan[k].push_back({&it->second, part.qubits});
            }
        }
    }
    std::vector<NoiseTable> tables = noise.tables(cc);
    size_t chunks = size_t((options.shots + kChunk - 1) / kChunk);
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, options.threads, [&](size_t c) {
        Rng rng = make_rng(options.seed, Stream::CpecShot, c);
        PureState state(n);
        std::vector<int8_t> outcomes;
        std::vector<uint32_t> counters;
        SpacetimeError ende;
        Partial &p = parts[c];
        uint64_t end = std::min<uint64_t>(options.shots, (c + 1) * kChunk);
        for (uint64_t i = c * kChunk; i < end; i++) {
            if (endecode) {
                endecode->draw_endecode(rng, ende);
            }
            int lambda = sample_lambda(cc.circuit(), rng);
            size_t v = noise.sample_variant(rng);
            double weight = 1;
            auto insert = [&](int kind, uint32_t index, PureState &s) {
                if (endecode) {
                    const SpacetimeLayout &layout = ende.layout();
                    const LayoutEntry &entry = layout.entries()[kind];
                    const PauliString &cell = ende.cells()[layout.offset(kind) + index];
                    if (!cell.is_identity()) {
                        s.apply_pauli(cell.embedded(n, entry.support));
                    }
                }
                for (const auto &[inv, qubits] : plan[kind]) {
                    size_t t = inv->alias.sample(rng);
                    weight *= inv->norm * inv->signs[t];
                    if (!inv->paulis[t].is_identity()) {
                        s.apply_pauli(inv->paulis[t].embedded(n, qubits));
                    }
                }
            };
            run_shot(cc, tables[v], lambda, rng, state, outcomes, counters, insert);
            double value = weight * a.evaluate(lambda, outcomes);
            p.sum += value;
            p.sum_sq += value * value;
            p.weight += std::abs(weight);
        }
    });
    MitigationResult r;
    r.shots = options.shots;
    double sum = 0, sum_sq = 0, weight = 0;
    for (const auto &p : parts) {
        sum += p.sum;
        sum_sq += p.sum_sq;
        weight += p.weight;
    }
    double m = double(options.shots);
    r.estimate = sum / m;
    r.sign_sum = sum;
    r.sign_sq_sum = sum_sq;
    r.gamma = weight / m;
    double var = options.shots > 1 ? std::max(0.0, (sum_sq - m * r.estimate * r.estimate) / (m - 1)) : 0.0;
    r.standard_error = std::sqrt(var / m);
    return r;
}

}  // namespace sni
