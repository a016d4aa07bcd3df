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

#include "sni/sampler.h"

#include <cmath>
#include <map>

#include "sni/errors.h"

namespace sni {

namespace {

constexpr double kNegligible = 1e-14;

Matrix named_gate(const std::string &name) {
    size_t q = (name == "CNOT") ? 2 : 1;
    return make_gate(name, default_support(q)).parts[0].matrix;
}

/// Unitary B with B kappa B^dagger = Z.
Matrix basis_change(const Matrix &kappa) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(kappa);
    Matrix b(2, 2);
    b.row(0) = es.eigenvectors().col(1).adjoint();
    b.row(1) = es.eigenvectors().col(0).adjoint();
    return b;
}

}  // namespace

CellDistribution::CellDistribution(size_t m, std::vector<double> dense)
    : m_(m), dense_(std::move(dense)), identity_(m) {
    if (dense_.size() != (size_t(1) << (2 * m))) {
        throw DimensionError("cell distribution has the wrong size");
    }
    double total = 0;
    for (double &p : dense_) {
        if (p < -1e-10 || !std::isfinite(p)) {
            throw DomainError("cell distribution has a negative entry");
        }
        if (p < kNegligible) {
            p = 0;
        }
        total += p;
    }
    if (std::abs(total - 1) > PauliChannel::kRenormalizeTolerance) {
        throw DomainError("cell distribution does not sum to one");
    }
    for (double &p : dense_) {
        p /= total;
    }
    error_rate_ = 1 - dense_[0];
    trivial_ = dense_[0] == 1;
    if (!trivial_) {
        std::vector<double> w;
        for (size_t i = 0; i < dense_.size(); i++) {
            if (dense_[i] > 0) {
                paulis_.push_back(PauliString::from_index(m, i));
                w.push_back(dense_[i]);
            }
        }
        alias_ = AliasTable(w);
    } else {
        error_rate_ = 0;
    }
}

CellDistribution CellDistribution::trivial(size_t m) {
    std::vector<double> d(size_t(1) << (2 * m), 0.0);
    d[0] = 1;
    return CellDistribution(m, std::move(d));
}

void SamplerTally::merge(const SamplerTally &other) {
    instances += other.instances;
    nontrivial += other.nontrivial;
    if (kind_draws.size() < other.kind_draws.size()) {
        kind_draws.resize(other.kind_draws.size(), 0);
    }
    for (size_t k = 0; k < other.kind_draws.size(); k++) {
        kind_draws[k] += other.kind_draws[k];
    }
}

std::shared_ptr<const SpacetimeLayout> make_layout(const CompiledCircuit &cc, const NoiseModel &model) {
    std::vector<LayoutEntry> entries;
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        entries.push_back(LayoutEntry{k, cc.max_counts()[k], model.noisy_support(cc.kinds()[k].representative)});
    }
    return std::make_shared<const SpacetimeLayout>(std::move(entries));
}

SpacetimeSampler::SpacetimeSampler(std::shared_ptr<const SpacetimeLayout> layout, SamplerTables tables,
                                   std::vector<double> variant_weights)
    : layout_(std::move(layout)), tables_(std::move(tables)), weights_(std::move(variant_weights)) {
    if (tables_.kinds.size() != weights_.size() || weights_.empty()) {
        throw DimensionError("sampler tables and variant weights differ in length");
    }
    if (!tables_.endecode.empty() && tables_.endecode.size() != weights_.size()) {
        throw DimensionError("encode/decode tables and variant weights differ in length");
    }
    auto check = [&](const std::vector<CellDistribution> &row) {
        if (row.size() != layout_->kind_count()) {
            throw DimensionError("sampler table does not match the layout");
        }
        for (size_t e = 0; e < row.size(); e++) {
            if (row[e].qubit_count() != layout_->entries()[e].support.size()) {
                throw DimensionError("cell distribution does not match its kind's support");
            }
        }
    };
    for (const auto &row : tables_.kinds) {
        check(row);
    }
    for (const auto &row : tables_.endecode) {
        check(row);
    }
}

size_t SpacetimeSampler::sample_variant(Rng &rng) const {
    if (weights_.size() == 1) {
        return 0;
    }
    double u = uniform01(rng), acc = 0;
    for (size_t v = 0; v < weights_.size(); v++) {
        acc += weights_[v];
        if (u < acc) {
            return v;
        }
    }
    return weights_.size() - 1;
}

double SpacetimeSampler::total_error_rate(size_t variant) const {
    double log_ok = 0;
    for (size_t e = 0; e < layout_->kind_count(); e++) {
        double r = tables_.kinds.at(variant)[e].error_rate();
        if (r >= 1) {
            return 1;
        }
        log_ok += double(layout_->entries()[e].slots) * std::log1p(-r);
    }
    return -std::expm1(log_ok);
}

double SpacetimeSampler::total_error_rate() const {
    double p = 0;
    for (size_t v = 0; v < weights_.size(); v++) {
        p += weights_[v] * total_error_rate(v);
    }
    return p;
}

bool SpacetimeSampler::draw(Rng &rng, SpacetimeError &out, SamplerTally *tally) const {
    if (out.layout_ptr() != layout_) {
        out = SpacetimeError(layout_);
    }
    const auto &row = tables_.kinds[sample_variant(rng)];
    auto cells = out.cells();
    bool nontrivial = false;
    for (size_t e = 0; e < layout_->kind_count(); e++) {
        const CellDistribution &d = row[e];
        size_t offset = layout_->offset(e), slots = layout_->entries()[e].slots;
        for (size_t j = 0; j < slots; j++) {
            const PauliString &p = d.sample(rng);
            cells[offset + j] = p;
            nontrivial |= !p.is_identity();
        }
    }
    if (tally) {
        tally->instances++;
        tally->nontrivial += nontrivial;
        if (tally->kind_draws.size() < layout_->kind_count()) {
            tally->kind_draws.resize(layout_->kind_count(), 0);
        }
        for (size_t e = 0; e < layout_->kind_count(); e++) {
            tally->kind_draws[e] += layout_->entries()[e].slots;
        }
    }
    return nontrivial;
}

bool SpacetimeSampler::draw_boosted(Rng &rng, SpacetimeError &out, double q, SamplerTally *tally) const {
    if (!(q >= 0 && q < 1)) {
        throw DomainError("boost rate must lie in [0, 1)");
    }
    bool nontrivial = draw(rng, out, tally);
    if (!nontrivial && q > 0) {
        return bernoulli(rng, q);
    }
    return nontrivial;
}

void SpacetimeSampler::draw_endecode(Rng &rng, SpacetimeError &out) const {
    if (out.layout_ptr() != layout_) {
        out = SpacetimeError(layout_);
    }
    if (!has_endecode()) {
        out.clear();
        return;
    }
    const auto &row = tables_.endecode[sample_variant(rng)];
    auto cells = out.cells();
    for (size_t e = 0; e < layout_->kind_count(); e++) {
        size_t offset = layout_->offset(e), slots = layout_->entries()[e].slots;
        for (size_t j = 0; j < slots; j++) {
            cells[offset + j] = row[e].sample(rng);
        }
    }
}

void SpacetimeSampler::processed(size_t k, Rng &rng, SpacetimeError &out, SpacetimeError &scratch,
                                 SamplerTally *tally, double q) const {
    draw_endecode(rng, out);
    if (k > 0 && q == 0 && total_error_rate() == 0) {
        throw SamplingError("cannot draw a nontrivial spacetime error: the total error rate is zero");
    }
    for (size_t i = 0; i < k; i++) {
        uint64_t attempts = 0;
        while (!draw_boosted(rng, scratch, q, tally)) {
            if (++attempts >= kRejectionCap) {
                throw SamplingError("cannot draw a nontrivial spacetime error within the rejection cap");
            }
        }
        out *= scratch;
    }
}

SpacetimeError SpacetimeSampler::processed(size_t k, Rng &rng, SamplerTally *tally, double q) const {
    SpacetimeError out(layout_), scratch(layout_);
    processed(k, rng, out, scratch, tally, q);
    return out;
}

SpacetimeSampler make_ideal_sampler(const CompiledCircuit &cc, const NoiseModel &model) {
    auto layout = make_layout(cc, model);
    SamplerTables tables;
    for (size_t v = 0; v < model.variant_count(); v++) {
        std::vector<CellDistribution> row;
        for (const auto &kind : cc.kinds()) {
            KindNoise n = model.native(kind.representative, v);
            row.emplace_back(n.support().size(), n.twirled().dense());
        }
        tables.kinds.push_back(std::move(row));
    }
    return SpacetimeSampler(layout, std::move(tables), model.weights());
}

Letter decode_bell_pair(int xx, int zz) {
    if (xx > 0) {
        return zz > 0 ? Letter::I : Letter::X;
    }
    return zz > 0 ? Letter::Z : Letter::Y;
}

SamplerCircuit SamplerCircuit::with_injected(const PauliString &local) const {
    if (local.size() != width) {
        throw DimensionError("injected error does not match the sampler width");
    }
    SamplerCircuit c = *this;
    SamplerStep s;
    s.type = SamplerStep::Type::Pauli;
    s.pauli = local.embedded(qubit_count(), default_support(width));
    c.steps.insert(c.steps.begin() + (std::ptrdiff_t)inject_at, s);
    return c;
}

std::vector<int> SamplerCircuit::outcomes_from_bits(uint64_t bits) const {
    std::vector<int> out;
    for (const auto &r : readout) {
        if (r.bell) {
            out.push_back((bits >> r.ancilla) & 1 ? -1 : 1);
        }
        out.push_back((bits >> r.logical) & 1 ? -1 : 1);
    }
    return out;
}

PauliString SamplerCircuit::decode(const std::vector<int> &outcomes) const {
    PauliString p(width);
    size_t i = 0;
    for (size_t k = 0; k < readout.size(); k++) {
        const Readout &r = readout[k];
        if (r.bell) {
            p.set(k, decode_bell_pair(outcomes.at(i), outcomes.at(i + 1)));
            i += 2;
        } else {
            p.set(k, outcomes.at(i) < 0 ? r.flip : Letter::I);
            i += 1;
        }
    }
    return p;
}

std::vector<double> SamplerCircuit::exact(size_t variant) const {
    const size_t n = qubit_count();
    DensityState rho(n);
    for (const auto &s : steps) {
        switch (s.type) {
            case SamplerStep::Type::Unitary:
                rho.apply_unitary(s.matrix, s.qubits);
                break;
            case SamplerStep::Type::Prepare:
                rho.prepare(s.matrix, s.pauli, s.qubits[0]);
                break;
            case SamplerStep::Type::Noise:
                noises.at(variant).at(s.noise).apply(rho);
                break;
            case SamplerStep::Type::Pauli:
                rho.apply_pauli(s.pauli);
                break;
        }
    }
    Matrix m = rho.matrix();
    std::vector<double> dense(size_t(1) << (2 * width), 0.0);
    for (uint64_t bits = 0; bits < (uint64_t(1) << n); bits++) {
        double pr = m(bits, bits).real();
        if (pr > 0) {
            dense[decode(outcomes_from_bits(bits)).index()] += pr;
        }
    }
    return dense;
}

std::vector<int> SamplerCircuit::sample_outcomes(size_t variant, Rng &rng) const {
    PureState psi(qubit_count());
    for (const auto &s : steps) {
        switch (s.type) {
            case SamplerStep::Type::Unitary:
                psi.apply_unitary(s.matrix, s.qubits);
                break;
            case SamplerStep::Type::Prepare:
                psi.prepare(s.matrix, s.pauli, s.qubits[0], rng);
                break;
            case SamplerStep::Type::Noise:
                noises.at(variant).at(s.noise).apply(psi, rng);
                break;
            case SamplerStep::Type::Pauli:
                psi.apply_pauli(s.pauli);
                break;
        }
    }
    const auto &amp = psi.amplitudes();
    double u = uniform01(rng), acc = 0;
    uint64_t bits = amp.size() - 1;
    for (uint64_t i = 0; i < amp.size(); i++) {
        acc += std::norm(amp[i]);
        if (u < acc) {
            bits = i;
            break;
        }
    }
    return outcomes_from_bits(bits);
}

namespace {

struct Builder {
    size_t m;
    SamplerCircuit c;

    explicit Builder(size_t width) : m(width) {
        c.width = width;
        c.readout.resize(width);
    }
    void unitary(const Matrix &u, std::vector<size_t> qubits) {
        SamplerStep s;
        s.type = SamplerStep::Type::Unitary;
        s.matrix = u;
        s.qubits = std::move(qubits);
        c.steps.push_back(std::move(s));
    }
    void prepare(const OpPart &part, size_t k) {
        SamplerStep s;
        s.type = SamplerStep::Type::Prepare;
        s.matrix = part.matrix;
        s.qubits = {k};
        s.pauli = part.flip;
        c.steps.push_back(std::move(s));
    }
    void noise(size_t index) {
        SamplerStep s;
        s.type = SamplerStep::Type::Noise;
        s.noise = index;
        c.steps.push_back(std::move(s));
    }
    void bell_prepare(size_t k) {
        unitary(named_gate("H"), {m + k});
        unitary(named_gate("CNOT"), {m + k, k});
    }
    void bell_measure(size_t k) {
        unitary(named_gate("CNOT"), {m + k, k});
        unitary(named_gate("H"), {m + k});
        c.readout[k] = Readout{true, k, m + k, Letter::I};
    }
    void kappa_measure(const OpPart &part, size_t k) {
        unitary(basis_change(part.matrix), {k});
        c.readout[k] = Readout{false, k, 0, part.flip.letter(0)};
    }
};

}  // namespace

SamplerCircuit build_sampler_circuit(const Operation &op, const std::vector<size_t> &noisy_support,
                                     const NoiseModel &model) {
    const size_t m = noisy_support.size();
    if (m == 0 || m > 4) {
        throw ScaleError("sampler circuits support 1 to 4 qubits");
    }
    std::map<size_t, size_t> local;
    for (size_t k = 0; k < m; k++) {
        local[noisy_support[k]] = k;
    }
    std::vector<OpPart> parts = op.parts;
    std::vector<bool> in_op(m, false);
    for (auto &p : parts) {
        for (auto &q : p.qubits) {
            auto it = local.find(q);
            if (it == local.end()) {
                throw ConfigError("operation " + op.key + " acts outside its noisy support");
            }
            q = it->second;
            in_op[q] = true;
        }
    }
    Builder b(m);
    // Noise list per variant: decode, native, encode.
    for (size_t v = 0; v < model.variant_count(); v++) {
        std::vector<KindNoise> list{model.decode(default_support(m), v),
                                    model.native(op, v).relabeled(default_support(m)),
                                    model.encode(default_support(m), v)};
        for (auto &n : list) {
            n.bind(2 * m);
        }
        b.c.noises.push_back(std::move(list));
    }
    switch (op.type) {
        case OpType::Gate:
            for (size_t k = 0; k < m; k++) {
                b.bell_prepare(k);
            }
            for (const auto &p : parts) {
                b.unitary(p.matrix.adjoint(), p.qubits);
            }
            b.noise(0);
            for (const auto &p : parts) {
                b.unitary(p.matrix, p.qubits);
            }
            b.noise(1);
            b.c.inject_at = b.c.steps.size();
            b.noise(2);
            for (size_t k = 0; k < m; k++) {
                b.bell_measure(k);
            }
            break;
        case OpType::Prepare:
            for (size_t k = 0; k < m; k++) {
                if (!in_op[k]) {
                    b.bell_prepare(k);
                }
            }
            for (const auto &p : parts) {
                b.prepare(p, p.qubits[0]);
            }
            b.noise(1);
            b.c.inject_at = b.c.steps.size();
            b.noise(2);
            break;
        case OpType::Measure:
            for (size_t k = 0; k < m; k++) {
                if (!in_op[k]) {
                    b.bell_prepare(k);
                }
            }
            for (const auto &p : parts) {
                b.prepare(p, p.qubits[0]);
            }
            b.noise(0);
            b.c.inject_at = b.c.steps.size();
            b.noise(1);
            break;
    }
    if (op.type != OpType::Gate) {
        std::vector<const OpPart *> part_at(m, nullptr);
        for (const auto &p : parts) {
            part_at[p.qubits[0]] = &p;
        }
        for (size_t k = 0; k < m; k++) {
            if (part_at[k]) {
                b.kappa_measure(*part_at[k], k);
            } else {
                b.bell_measure(k);
            }
        }
    }
    return std::move(b.c);
}

SamplerCircuit build_endecode_circuit(const std::vector<size_t> &support, const NoiseModel &model) {
    const size_t m = support.size();
    if (m == 0 || m > 4) {
        throw ScaleError("sampler circuits support 1 to 4 qubits");
    }
    Builder b(m);
    for (size_t v = 0; v < model.variant_count(); v++) {
        std::vector<KindNoise> list{model.decode(default_support(m), v), model.encode(default_support(m), v)};
        for (auto &n : list) {
            n.bind(2 * m);
        }
        b.c.noises.push_back(std::move(list));
    }
    for (size_t k = 0; k < m; k++) {
        b.bell_prepare(k);
    }
    b.noise(0);
    b.c.inject_at = b.c.steps.size();
    b.noise(1);
    for (size_t k = 0; k < m; k++) {
        b.bell_measure(k);
    }
    return std::move(b.c);
}

PracticalSampler::PracticalSampler(const CompiledCircuit &cc, const NoiseModel &model)
    : layout_(make_layout(cc, model)), weights_(model.weights()) {
    std::map<std::vector<size_t>, SamplerCircuit> endecode_cache;
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        const Operation &rep = cc.kinds()[k].representative;
        const auto &support = layout_->entries()[k].support;
        circuits_.push_back(build_sampler_circuit(rep, support, model));
        if (rep.type == OpType::Measure) {
            endecode_.emplace_back(std::nullopt);
            continue;
        }
        auto it = endecode_cache.find(support);
        if (it == endecode_cache.end()) {
            it = endecode_cache.emplace(support, build_endecode_circuit(support, model)).first;
        }
        endecode_.emplace_back(it->second);
    }
}

SpacetimeSampler PracticalSampler::spacetime_sampler() const {
    SamplerTables tables;
    for (size_t v = 0; v < weights_.size(); v++) {
        std::vector<CellDistribution> row, ende;
        std::map<std::vector<size_t>, CellDistribution> ende_cache;
        for (size_t k = 0; k < circuits_.size(); k++) {
            size_t m = circuits_[k].width;
            row.emplace_back(m, circuits_[k].exact(v));
            if (!endecode_[k]) {
                ende.push_back(CellDistribution::trivial(m));
                continue;
            }
            const auto &support = layout_->entries()[k].support;
            auto it = ende_cache.find(support);
            if (it == ende_cache.end()) {
                it = ende_cache.emplace(support, CellDistribution(m, endecode_[k]->exact(v))).first;
            }
            ende.push_back(it->second);
        }
        tables.kinds.push_back(std::move(row));
        tables.endecode.push_back(std::move(ende));
    }
    return SpacetimeSampler(layout_, std::move(tables), weights_);
}

}  // namespace sni
