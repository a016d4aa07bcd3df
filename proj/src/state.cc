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

#include "sni/state.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sni/errors.h"

namespace sni {

namespace {

constexpr double kMinProbability = 1e-15;

void check_qubits(std::span<const size_t> qubits, size_t n) {
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] >= n) {
            throw DimensionError("qubit index out of range");
        }
        for (size_t j = 0; j < k; j++) {
            if (qubits[j] == qubits[k]) {
                throw DimensionError("repeated qubit index");
            }
        }
    }
}

}  // namespace

void apply_matrix(std::vector<Complex> &v, const Matrix &u, std::span<const size_t> pos) {
    const size_t k = pos.size();
    const size_t d = size_t(1) << k;
    if ((size_t)u.rows() != d || (size_t)u.cols() != d) {
        throw DimensionError("matrix size does not match qubit count");
    }
    const size_t size = v.size();
    if (k == 1) {
        const size_t b = size_t(1) << pos[0];
        const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
        for (size_t i = 0; i < size; i++) {
            if (i & b) {
                continue;
            }
            Complex a0 = v[i], a1 = v[i | b];
            v[i] = u00 * a0 + u01 * a1;
            v[i | b] = u10 * a0 + u11 * a1;
        }
        return;
    }
    size_t mask = 0;
    std::vector<size_t> offsets(d, 0);
    for (size_t j = 0; j < k; j++) {
        mask |= size_t(1) << pos[j];
    }
    for (size_t s = 0; s < d; s++) {
        for (size_t j = 0; j < k; j++) {
            if ((s >> j) & 1) {
                offsets[s] |= size_t(1) << pos[j];
            }
        }
    }
    std::vector<Complex> in(d), out(d);
    for (size_t i = 0; i < size; i++) {
        if (i & mask) {
            continue;
        }
        for (size_t s = 0; s < d; s++) {
            in[s] = v[i | offsets[s]];
        }
        for (size_t r = 0; r < d; r++) {
            Complex acc = 0;
            for (size_t c = 0; c < d; c++) {
                acc += u(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t s = 0; s < d; s++) {
            v[i | offsets[s]] = out[s];
        }
    }
}

void apply_pauli_masks(std::vector<Complex> &v, uint64_t x, uint64_t z) {
    if (z) {
        for (size_t i = 0; i < v.size(); i++) {
            if (std::popcount(i & z) & 1) {
                v[i] = -v[i];
            }
        }
    }
    if (x) {
        for (size_t i = 0; i < v.size(); i++) {
            size_t j = i ^ x;
            if (j > i) {
                std::swap(v[i], v[j]);
            }
        }
    }
}

Matrix projector(const Matrix &kappa, int outcome) {
    Matrix id = Matrix::Identity(kappa.rows(), kappa.cols());
    return 0.5 * (id + double(outcome) * kappa);
}

PureState::PureState(size_t n) : n_(n), amp_(size_t(1) << n, 0) {
    if (n > 24) {
        throw ScaleError("state vector too large");
    }
    amp_[0] = 1;
}

void PureState::reset() {
    std::fill(amp_.begin(), amp_.end(), Complex(0));
    amp_[0] = 1;
}

void PureState::apply_unitary(const Matrix &u, std::span<const size_t> qubits) {
    apply_matrix(amp_, u, qubits);
}

void PureState::apply_pauli(const PauliString &p) {
    if (p.size() != n_) {
        throw DimensionError("Pauli size does not match the state");
    }
    apply_pauli_masks(amp_, p.x_bits(), p.z_bits());
}

int PureState::measure(const Matrix &kappa, size_t qubit, Rng &rng) {
    const size_t q[1] = {qubit};
    scratch_ = amp_;
    apply_matrix(scratch_, projector(kappa, 1), q);
    double p_plus = 0;
    for (const auto &a : scratch_) {
        p_plus += std::norm(a);
    }
    p_plus = std::clamp(p_plus, 0.0, 1.0);
    int outcome = uniform01(rng) < p_plus ? 1 : -1;
    double p = outcome == 1 ? p_plus : 1 - p_plus;
    if (p < kMinProbability) {
        outcome = -outcome;
        p = 1 - p;
    }
    if (outcome == 1) {
        amp_.swap(scratch_);
    } else {
        apply_matrix(amp_, projector(kappa, -1), q);
    }
    const double s = 1 / std::sqrt(p);
    for (auto &a : amp_) {
        a *= s;
    }
    return outcome;
}

void PureState::prepare(const Matrix &kappa, const PauliString &flip, size_t qubit, Rng &rng) {
    if (measure(kappa, qubit, rng) == -1) {
        const size_t q[1] = {qubit};
        apply_matrix(amp_, pauli_matrix(flip), q);
    }
}

double PureState::expectation(const Matrix &o, std::span<const size_t> qubits) const {
    std::vector<Complex> w = amp_;
    apply_matrix(w, o, qubits);
    Complex acc = 0;
    for (size_t i = 0; i < w.size(); i++) {
        acc += std::conj(amp_[i]) * w[i];
    }
    return acc.real();
}

DensityState::DensityState(size_t n) : n_(n), v_(size_t(1) << (2 * n), 0) {
    if (n > 10) {
        throw ScaleError("density matrix too large");
    }
    v_[0] = 1;
}

DensityState DensityState::from_matrix(const Matrix &rho) {
    size_t d = rho.rows();
    size_t n = 0;
    while ((size_t(1) << n) < d) {
        n++;
    }
    if ((size_t(1) << n) != d || (size_t)rho.cols() != d) {
        throw DimensionError("density matrix must be square with a power-of-two size");
    }
    DensityState s(n);
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < d; i++) {
            s.v_[i + d * j] = rho(i, j);
        }
    }
    return s;
}

Matrix DensityState::matrix() const {
    size_t d = size_t(1) << n_;
    Matrix m(d, d);
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < d; i++) {
            m(i, j) = v_[i + d * j];
        }
    }
    return m;
}

Complex DensityState::trace() const {
    size_t d = size_t(1) << n_;
    Complex t = 0;
    for (size_t i = 0; i < d; i++) {
        t += v_[i + d * i];
    }
    return t;
}

void DensityState::scale(double s) {
    for (auto &a : v_) {
        a *= s;
    }
}

DensityState &DensityState::operator+=(const DensityState &other) {
    if (other.n_ != n_) {
        throw DimensionError("density states of different sizes");
    }
    for (size_t i = 0; i < v_.size(); i++) {
        v_[i] += other.v_[i];
    }
    return *this;
}

void DensityState::apply_kraus(const Matrix &a, std::span<const size_t> qubits) {
    check_qubits(qubits, n_);
    apply_matrix(v_, a, qubits);
    std::vector<size_t> bra(qubits.begin(), qubits.end());
    for (auto &q : bra) {
        q += n_;
    }
    apply_matrix(v_, a.conjugate(), bra);
}

void DensityState::apply_unitary(const Matrix &u, std::span<const size_t> qubits) {
    apply_kraus(u, qubits);
}

void DensityState::apply_pauli(const PauliString &p) {
    if (p.size() != n_) {
        throw DimensionError("Pauli size does not match the state");
    }
    // X^x Z^z is real, so the bra side uses the same masks.
    apply_pauli_masks(v_, p.x_bits() | (p.x_bits() << n_), p.z_bits() | (p.z_bits() << n_));
}

void DensityState::apply_channel(const PauliChannel &c) {
    const auto &support = c.support();
    check_qubits(support, n_);
    std::vector<Complex> acc(v_.size(), 0);
    for (const auto &[p, prob] : c.terms()) {
        PauliString g = p.embedded(n_, support);
        std::vector<Complex> w = v_;
        apply_pauli_masks(w, g.x_bits() | (g.x_bits() << n_), g.z_bits() | (g.z_bits() << n_));
        for (size_t i = 0; i < w.size(); i++) {
            acc[i] += prob * w[i];
        }
    }
    v_.swap(acc);
}

void DensityState::apply_superoperator(const SuperOperator &s, std::span<const size_t> qubits) {
    check_qubits(qubits, n_);
    if (qubits.size() != s.qubit_count()) {
        throw DimensionError("superoperator support does not match qubits");
    }
    std::vector<size_t> pos(qubits.begin(), qubits.end());
    for (size_t q : qubits) {
        pos.push_back(q + n_);
    }
    apply_matrix(v_, s.matrix(), pos);
}

DensityState DensityState::project(const Matrix &kappa, size_t qubit, int outcome) const {
    DensityState out = *this;
    const size_t q[1] = {qubit};
    out.apply_kraus(projector(kappa, outcome), q);
    return out;
}

void DensityState::prepare(const Matrix &kappa, const PauliString &flip, size_t qubit) {
    DensityState minus = project(kappa, qubit, -1);
    const size_t q[1] = {qubit};
    minus.apply_unitary(pauli_matrix(flip), q);
    apply_kraus(projector(kappa, 1), q);
    *this += minus;
}

double DensityState::expectation(const Matrix &o, std::span<const size_t> qubits) const {
    DensityState w = *this;
    check_qubits(qubits, n_);
    apply_matrix(w.v_, o, qubits);
    return w.trace().real();
}

Matrix DensityState::partial_trace_keep(std::span<const size_t> keep) const {
    check_qubits(keep, n_);
    size_t k = keep.size();
    size_t dk = size_t(1) << k;
    size_t d = size_t(1) << n_;
    size_t keep_mask = 0;
    for (size_t q : keep) {
        keep_mask |= size_t(1) << q;
    }
    auto local = [&](size_t i) {
        size_t s = 0;
        for (size_t j = 0; j < k; j++) {
            s |= ((i >> keep[j]) & 1) << j;
        }
        return s;
    };
    Matrix out = Matrix::Zero(dk, dk);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            if ((i & ~keep_mask) == (j & ~keep_mask)) {
                out(local(i), local(j)) += v_[i + d * j];
            }
        }
    }
    return out;
}

}  // namespace sni
