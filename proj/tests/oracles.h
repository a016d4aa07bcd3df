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

#ifndef SNI_TESTS_ORACLES_H
#define SNI_TESTS_ORACLES_H

// Independent reference computations shared by unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include "sni/circuit.h"
#include "sni/noise.h"
#include "sni/noise_model.h"
#include "sni/simulate.h"

namespace sni::oracle {

/// exp(-i t P) for a Pauli matrix P.
inline Matrix pauli_exp(const Matrix &p, double t) {
    return std::cos(t) * Matrix::Identity(p.rows(), p.cols()) - Complex(0, std::sin(t)) * p;
}

/// <X_0> after `steps` applications of exp(-i pi/8 (X0 + X1)) exp(-i pi/8 Z0 Z1) to |++>, by dense
/// matrix evolution.
inline double trotter_x0(size_t steps) {
    Matrix x = pauli_matrix(Letter::X), z = pauli_matrix(Letter::Z), id = Matrix::Identity(2, 2);
    // Qubit 0 is the least significant factor.
    Matrix x0 = kron(id, x), x1 = kron(x, id), zz = kron(z, z);
    Matrix u = pauli_exp(x0, M_PI / 8) * pauli_exp(x1, M_PI / 8) * pauli_exp(zz, M_PI / 8);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(4, 0.5);
    for (size_t s = 0; s < steps; s++) {
        psi = u * psi;
    }
    return (psi.adjoint() * x0 * psi)(0, 0).real();
}

/// Composite Pauli channel of a kind whose native noise holds only Pauli channels.
inline PauliChannel kind_channel(const KindNoise &k) {
    size_t m = k.support().size();
    PauliChannel total = PauliChannel::identity(m);
    for (const auto &e : k.elements()) {
        if (!e.channel) {
            throw ContractError("oracle needs Pauli-channel noise");
        }
        std::vector<double> dense(size_t(1) << (2 * m), 0.0);
        for (const auto &[p, prob] : e.channel->terms()) {
            dense[p.embedded(m, e.positions).index()] += prob;
        }
        total = compose(PauliChannel::from_dense(default_support(m), dense), total);
    }
    return total;
}

/// Largest absolute difference between the natively noisy outcome distribution and the mixture, over
/// every spacetime error, of noiseless runs with that error inserted. Enumerates all cells exactly.
inline double linearity_gap(const CompiledCircuit &cc, const NoiseTable &noise) {
    std::vector<LayoutEntry> entries;
    std::vector<PauliChannel> channels;
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        entries.push_back(LayoutEntry{k, cc.max_counts()[k], noise[k].support()});
        channels.push_back(kind_channel(noise[k]));
    }
    auto layout = std::make_shared<const SpacetimeLayout>(entries);
    NoiseTable silent;
    for (const auto &k : noise) {
        silent.emplace_back(k.support(), std::vector<NoiseElement>{});
    }
    std::vector<std::pair<size_t, size_t>> cells;
    for (size_t k = 0; k < entries.size(); k++) {
        for (size_t j = 0; j < entries[k].slots; j++) {
            cells.push_back({k, j});
        }
    }
    std::map<std::pair<int, std::vector<int8_t>>, double> mixture;
    SpacetimeError err(layout);
    std::function<void(size_t, double)> rec = [&](size_t c, double weight) {
        if (c == cells.size()) {
            ExactOptions o;
            o.average_twirl = false;
            o.insertion = &err;
            for (const auto &b : exact_distribution(cc, silent, o)) {
                mixture[{b.lambda, b.outcomes}] += weight * b.probability;
            }
            return;
        }
        auto [k, j] = cells[c];
        for (const auto &[p, prob] : channels[k].terms()) {
            err.cell(k, j) = p;
            rec(c + 1, weight * prob);
        }
        err.cell(k, j) = PauliString(entries[k].support.size());
    };
    rec(0, 1.0);
    ExactOptions o;
    o.average_twirl = false;
    double gap = 0;
    std::map<std::pair<int, std::vector<int8_t>>, double> native;
    for (const auto &b : exact_distribution(cc, noise, o)) {
        native[{b.lambda, b.outcomes}] += b.probability;
    }
    for (const auto &[key, p] : native) {
        gap = std::max(gap, std::abs(p - mixture[key]));
    }
    for (const auto &[key, p] : mixture) {
        gap = std::max(gap, std::abs(p - native[key]));
    }
    return gap;
}

/// Matrix of u acting on the listed qubits of an m-qubit register (little-endian).
inline Matrix embed(const Matrix &u, const std::vector<size_t> &qubits, size_t m) {
    size_t d = size_t(1) << m;
    Matrix out = Matrix::Zero(d, d);
    uint64_t mask = 0;
    for (size_t q : qubits) {
        mask |= uint64_t(1) << q;
    }
    auto sub = [&](uint64_t i) {
        uint64_t s = 0;
        for (size_t k = 0; k < qubits.size(); k++) {
            s |= ((i >> qubits[k]) & 1) << k;
        }
        return s;
    };
    for (uint64_t r = 0; r < d; r++) {
        for (uint64_t c = 0; c < d; c++) {
            if ((r & ~mask) == (c & ~mask)) {
                out(r, c) = u(sub(r), sub(c));
            }
        }
    }
    return out;
}

/// Application of a kind's noise to an operator on its m support qubits.
inline Matrix apply_noise(const KindNoise &k, const Matrix &x) {
    size_t m = k.support().size();
    Matrix y = x;
    for (const auto &e : k.elements()) {
        if (e.channel) {
            Matrix acc = Matrix::Zero(y.rows(), y.cols());
            for (const auto &[p, prob] : e.channel->terms()) {
                Matrix t = pauli_matrix(p.embedded(m, e.positions));
                acc += prob * t * y * t.adjoint();
            }
            y = acc;
        } else {
            Matrix w = embed(e.unitary, e.positions, m);
            y = w * y * w.adjoint();
        }
    }
    return y;
}

/// Pauli probabilities of the twirl of a channel given as a function on operators.
template <typename F>
std::vector<double> twirl_probabilities(size_t m, F &&channel) {
    size_t count = size_t(1) << (2 * m);
    double d = double(size_t(1) << m);
    std::vector<double> f(count);
    for (size_t i = 0; i < count; i++) {
        Matrix s = pauli_matrix(PauliString::from_index(m, i));
        f[i] = (s * channel(s)).trace().real() / d;
    }
    std::vector<double> p(count, 0.0);
    for (size_t t = 0; t < count; t++) {
        PauliString tau = PauliString::from_index(m, t);
        for (size_t i = 0; i < count; i++) {
            p[t] += f[i] * commutation_sign(PauliString::from_index(m, i), tau);
        }
        p[t] /= double(count);
    }
    return p;
}

/// Local copy of an operation's parts with qubits renumbered by position in `support`.
inline std::vector<OpPart> local_parts(const Operation &op, const std::vector<size_t> &support) {
    std::vector<OpPart> parts = op.parts;
    for (auto &p : parts) {
        for (auto &q : p.qubits) {
            q = size_t(std::find(support.begin(), support.end(), q) - support.begin());
        }
    }
    return parts;
}

/// Effective error distribution of an operation's sampler, by channel composition: gates give the twirl
/// of En N [U] De [U^dagger]; preparations the flip statistics of En N applied to the prepared state;
/// measurements those of N De. Preparations and measurements must cover their noisy support.
inline std::vector<double> effective_distribution(const Operation &op, const std::vector<size_t> &support,
                                                  const NoiseModel &model, size_t variant) {
    size_t m = support.size();
    KindNoise native = model.native(op, variant).relabeled(default_support(m));
    KindNoise en = model.encode(default_support(m), variant), de = model.decode(default_support(m), variant);
    std::vector<OpPart> parts = local_parts(op, support);
    size_t d = size_t(1) << m;
    if (op.type == OpType::Gate) {
        Matrix u = Matrix::Identity(d, d);
        for (const auto &p : parts) {
            u = embed(p.matrix, p.qubits, m) * u;
        }
        return twirl_probabilities(m, [&](const Matrix &x) {
            Matrix y = apply_noise(de, u.adjoint() * x * u);
            return apply_noise(en, apply_noise(native, u * y * u.adjoint()));
        });
    }
    if (parts.size() != m) {
        throw ContractError("oracle needs the operation to cover its noisy support");
    }
    Matrix rho = Matrix::Identity(1, 1);
    std::vector<Matrix> minus(m);
    std::vector<Letter> flips(m);
    std::vector<Matrix> plus_states(m);
    for (const auto &p : parts) {
        size_t k = p.qubits[0];
        plus_states[k] = projector(p.matrix, 1);
        minus[k] = projector(p.matrix, -1);
        flips[k] = p.flip.letter(0);
    }
    rho = plus_states[0];
    for (size_t k = 1; k < m; k++) {
        rho = kron(plus_states[k], rho);
    }
    rho = op.type == OpType::Prepare ? apply_noise(en, apply_noise(native, rho)) : apply_noise(native, apply_noise(de, rho));
    std::vector<double> dist(size_t(1) << (2 * m), 0.0);
    for (uint64_t pattern = 0; pattern < d; pattern++) {
        Matrix proj = (pattern & 1) ? minus[0] : plus_states[0];
        PauliString err(m);
        if (pattern & 1) {
            err.set(0, flips[0]);
        }
        for (size_t k = 1; k < m; k++) {
            bool bit = (pattern >> k) & 1;
            proj = kron(bit ? minus[k] : plus_states[k], proj);
            if (bit) {
                err.set(k, flips[k]);
            }
        }
        dist[err.index()] += (proj * rho).trace().real();
    }
    return dist;
}

/// Error distribution of the encode/decode pair on m qubits: the twirl of En De.
inline std::vector<double> endecode_distribution(size_t m, const NoiseModel &model, size_t variant) {
    KindNoise en = model.encode(default_support(m), variant), de = model.decode(default_support(m), variant);
    return twirl_probabilities(m, [&](const Matrix &x) { return apply_noise(en, apply_noise(de, x)); });
}

inline double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    double tv = 0;
    for (size_t i = 0; i < a.size(); i++) {
        tv += std::abs(a[i] - b.at(i));
    }
    return tv / 2;
}

}  // namespace sni::oracle

#endif
