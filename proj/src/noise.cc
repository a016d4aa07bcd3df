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

#include "sni/noise.h"

#include <cmath>
#include <numeric>

#include "sni/errors.h"

namespace sni {

namespace {

size_t dense_size(size_t q) {
    return size_t(1) << (2 * q);
}

void check_term_size(const PauliString &p, size_t q) {
    if (p.size() != q) {
        throw DimensionError("Pauli term " + p.str() + " does not match a support of " + std::to_string(q) +
                             " qubits");
    }
}

Matrix vec(const Matrix &m) {
    Matrix v(m.size(), 1);
    for (Eigen::Index j = 0; j < m.cols(); j++) {
        for (Eigen::Index i = 0; i < m.rows(); i++) {
            v(i + m.rows() * j, 0) = m(i, j);
        }
    }
    return v;
}

Matrix unvec(const Matrix &v, Eigen::Index d) {
    Matrix m(d, d);
    for (Eigen::Index j = 0; j < d; j++) {
        for (Eigen::Index i = 0; i < d; i++) {
            m(i, j) = v(i + d * j, 0);
        }
    }
    return m;
}

}  // namespace

std::vector<size_t> default_support(size_t q) {
    std::vector<size_t> s(q);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

SignedPauliMap::SignedPauliMap(std::vector<size_t> support, std::map<PauliString, double> terms)
    : support_(std::move(support)), terms_(std::move(terms)) {
    for (const auto &[p, w] : terms_) {
        check_term_size(p, support_.size());
        if (!std::isfinite(w)) {
            throw DomainError("non-finite Pauli map weight");
        }
    }
}

SignedPauliMap SignedPauliMap::identity(size_t q) {
    return SignedPauliMap(default_support(q), {{PauliString(q), 1.0}});
}

SignedPauliMap SignedPauliMap::from_text(std::initializer_list<std::pair<std::string_view, double>> terms) {
    std::map<PauliString, double> m;
    size_t q = 0;
    for (const auto &[text, w] : terms) {
        PauliString p = PauliString::from_text(text);
        q = p.size();
        m[p] += w;
    }
    return SignedPauliMap(default_support(q), std::move(m));
}

double SignedPauliMap::weight(const PauliString &p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0.0 : it->second;
}

std::vector<double> SignedPauliMap::dense() const {
    std::vector<double> result(dense_size(qubit_count()), 0.0);
    for (const auto &[p, w] : terms_) {
        result[p.index()] += w;
    }
    return result;
}

SignedPauliMap SignedPauliMap::from_dense(std::vector<size_t> support, const std::vector<double> &weights,
                                          double drop) {
    size_t q = support.size();
    if (weights.size() != dense_size(q)) {
        throw DimensionError("dense Pauli weights have the wrong length");
    }
    std::map<PauliString, double> m;
    for (size_t k = 0; k < weights.size(); k++) {
        if (std::abs(weights[k]) > drop) {
            m.emplace(PauliString::from_index(q, k), weights[k]);
        }
    }
    return SignedPauliMap(std::move(support), std::move(m));
}

PauliChannel::PauliChannel(std::vector<size_t> support, std::vector<std::pair<PauliString, double>> terms)
    : support_(std::move(support)) {
    std::map<PauliString, double> merged;
    double total = 0;
    for (const auto &[p, w] : terms) {
        check_term_size(p, support_.size());
        if (!(w >= 0) || !std::isfinite(w)) {
            throw DomainError("Pauli channel probability " + std::to_string(w) + " for " + p.str() +
                              " is not a nonnegative number");
        }
        if (merged.count(p)) {
            throw DomainError("duplicate Pauli channel term " + p.str());
        }
        merged[p] = w;
        total += w;
    }
    double drift = std::abs(total - 1.0);
    if (drift > kRenormalizeTolerance) {
        throw DomainError("Pauli channel probabilities sum to " + std::to_string(total));
    }
    for (auto &[p, w] : merged) {
        if (w > 0) {
            terms_.emplace_back(p, drift > kSumTolerance ? w / total : w);
        }
    }
    std::vector<double> weights;
    weights.reserve(terms_.size());
    for (const auto &t : terms_) {
        weights.push_back(t.second);
    }
    alias_ = AliasTable(weights);
}

PauliChannel PauliChannel::identity(size_t q) {
    return PauliChannel(default_support(q), {{PauliString(q), 1.0}});
}

PauliChannel PauliChannel::from_text(std::initializer_list<std::pair<std::string_view, double>> terms) {
    std::vector<std::pair<PauliString, double>> v;
    size_t q = 0;
    for (const auto &[text, w] : terms) {
        v.emplace_back(PauliString::from_text(text), w);
        q = v.back().first.size();
    }
    return PauliChannel(default_support(q), std::move(v));
}

PauliChannel PauliChannel::from_dense(std::vector<size_t> support, const std::vector<double> &probabilities) {
    size_t q = support.size();
    if (probabilities.size() != dense_size(q)) {
        throw DimensionError("dense Pauli probabilities have the wrong length");
    }
    std::vector<std::pair<PauliString, double>> v;
    for (size_t k = 0; k < probabilities.size(); k++) {
        double w = probabilities[k];
        if (w < 0 && w > -1e-12) {
            w = 0;
        }
        if (w != 0) {
            v.emplace_back(PauliString::from_index(q, k), w);
        }
    }
    return PauliChannel(std::move(support), std::move(v));
}

double PauliChannel::probability(const PauliString &p) const {
    for (const auto &t : terms_) {
        if (t.first == p) {
            return t.second;
        }
    }
    return 0.0;
}

double PauliChannel::total_error_rate() const {
    double r = 0;
    for (const auto &t : terms_) {
        if (!t.first.is_identity()) {
            r += t.second;
        }
    }
    return r;
}

std::vector<double> PauliChannel::dense() const {
    std::vector<double> result(dense_size(qubit_count()), 0.0);
    for (const auto &[p, w] : terms_) {
        result[p.index()] = w;
    }
    return result;
}

PauliChannel PauliChannel::with_support(std::vector<size_t> support) const {
    if (support.size() != support_.size()) {
        throw DimensionError("new support has a different size");
    }
    return PauliChannel(std::move(support), terms_);
}

SignedPauliMap PauliChannel::as_signed() const {
    std::map<PauliString, double> m(terms_.begin(), terms_.end());
    return SignedPauliMap(support_, std::move(m));
}

SuperOperator::SuperOperator(std::vector<size_t> support, Matrix matrix)
    : support_(std::move(support)), matrix_(std::move(matrix)) {
    if (support_.size() > kMaxQubits) {
        throw ScaleError("superoperators are limited to 3 qubits");
    }
    Eigen::Index dim = (Eigen::Index)dense_size(support_.size());
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw DimensionError("superoperator matrix does not match its support");
    }
}

SuperOperator SuperOperator::identity(size_t q) {
    size_t dim = dense_size(q);
    return SuperOperator(default_support(q), Matrix::Identity(dim, dim));
}

SuperOperator SuperOperator::unitary(std::vector<size_t> support, const Matrix &u) {
    return SuperOperator(std::move(support), kron(u.conjugate(), u));
}

bool SuperOperator::is_trace_preserving(double tol) const {
    Eigen::Index d = (Eigen::Index)1 << qubit_count();
    Matrix id_dual = vec(Matrix::Identity(d, d)).adjoint();
    return (id_dual * matrix_ - id_dual).cwiseAbs().maxCoeff() <= tol;
}

Matrix SuperOperator::pauli_transfer_matrix() const {
    size_t q = qubit_count();
    size_t dim = dense_size(q);
    double d = (double)(size_t(1) << q);
    Matrix basis(dim, dim);
    for (size_t k = 0; k < dim; k++) {
        basis.col(k) = vec(pauli_matrix(PauliString::from_index(q, k)));
    }
    return basis.adjoint() * matrix_ * basis / d;
}

Matrix SuperOperator::apply(const Matrix &rho) const {
    return unvec(matrix_ * vec(rho), rho.rows());
}

SuperOperator SuperOperator::then(const SuperOperator &b) const {
    if (b.support_ != support_) {
        throw DimensionError("superoperator composition needs equal supports");
    }
    return SuperOperator(support_, b.matrix_ * matrix_);
}

PauliChannel depolarizing_channel(size_t q, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("depolarizing rate " + std::to_string(p) + " outside [0, 1]");
    }
    if (q == 0) {
        throw DomainError("depolarizing channel needs at least one qubit");
    }
    size_t dim = dense_size(q);
    std::vector<double> probs(dim, p / (double)dim);
    probs[0] = 1.0 - (double)(dim - 1) * p / (double)dim;
    return PauliChannel::from_dense(default_support(q), probs);
}

SuperOperator coherent_z_rotation(double theta, const PauliString &axis) {
    if (axis.is_identity()) {
        throw DomainError("rotation axis must be a non-identity Pauli");
    }
    return SuperOperator::unitary(default_support(axis.size()), pauli_rotation(theta, axis));
}

SuperOperator to_superoperator(const SignedPauliMap &m) {
    size_t q = m.qubit_count();
    size_t dim = dense_size(q);
    Matrix s = Matrix::Zero(dim, dim);
    for (const auto &[p, w] : m.terms()) {
        Matrix pm = pauli_matrix(p);
        s += w * kron(pm.conjugate(), pm);
    }
    return SuperOperator(m.support(), s);
}

SuperOperator to_superoperator(const PauliChannel &c) {
    return to_superoperator(c.as_signed());
}

PauliChannel pauli_twirl(const SuperOperator &s) {
    if (!s.is_trace_preserving()) {
        throw ContractError("Pauli twirl requires a trace-preserving superoperator");
    }
    Matrix ptm = s.pauli_transfer_matrix();
    std::vector<double> f(ptm.rows());
    for (Eigen::Index k = 0; k < ptm.rows(); k++) {
        f[k] = ptm(k, k).real();
    }
    SignedPauliMap m = from_pauli_fidelities(s.support(), f);
    return PauliChannel::from_dense(s.support(), m.dense());
}

PauliChannel pauli_twirl_unitary(std::vector<size_t> support, const Matrix &u) {
    size_t q = support.size();
    size_t dim = dense_size(q);
    double d = (double)(size_t(1) << q);
    std::vector<double> probs(dim);
    for (size_t k = 0; k < dim; k++) {
        Complex t = (pauli_matrix(PauliString::from_index(q, k)).adjoint() * u).trace();
        probs[k] = std::norm(t) / (d * d);
    }
    return PauliChannel::from_dense(std::move(support), probs);
}

double l1_pauli_norm(const SignedPauliMap &m) {
    double total = 0;
    for (const auto &[p, w] : m.terms()) {
        total += std::abs(w);
    }
    return total;
}

SignedPauliMap compose(const SignedPauliMap &a, const SignedPauliMap &b) {
    if (a.support() != b.support()) {
        throw DimensionError("composition needs equal supports");
    }
    std::map<PauliString, double> result;
    for (const auto &[pa, wa] : a.terms()) {
        for (const auto &[pb, wb] : b.terms()) {
            result[pa * pb] += wa * wb;
        }
    }
    return SignedPauliMap(a.support(), std::move(result));
}

PauliChannel compose(const PauliChannel &a, const PauliChannel &b) {
    if (a.support() != b.support()) {
        throw DimensionError("composition needs equal supports");
    }
    std::vector<double> result(dense_size(a.qubit_count()), 0.0);
    for (const auto &[pa, wa] : a.terms()) {
        for (const auto &[pb, wb] : b.terms()) {
            result[(pa * pb).index()] += wa * wb;
        }
    }
    return PauliChannel::from_dense(a.support(), result);
}

std::vector<double> pauli_fidelities(const SignedPauliMap &m) {
    size_t q = m.qubit_count();
    size_t dim = dense_size(q);
    std::vector<double> f(dim, 0.0);
    for (size_t s = 0; s < dim; s++) {
        PauliString ps = PauliString::from_index(q, s);
        for (const auto &[t, w] : m.terms()) {
            f[s] += commutation_sign(ps, t) * w;
        }
    }
    return f;
}

SignedPauliMap from_pauli_fidelities(std::vector<size_t> support, const std::vector<double> &fidelities) {
    size_t q = support.size();
    size_t dim = dense_size(q);
    if (fidelities.size() != dim) {
        throw DimensionError("fidelity vector has the wrong length");
    }
    std::vector<PauliString> paulis;
    paulis.reserve(dim);
    for (size_t k = 0; k < dim; k++) {
        paulis.push_back(PauliString::from_index(q, k));
    }
    std::vector<double> w(dim, 0.0);
    for (size_t t = 0; t < dim; t++) {
        double acc = 0;
        for (size_t s = 0; s < dim; s++) {
            acc += commutation_sign(paulis[s], paulis[t]) * fidelities[s];
        }
        w[t] = acc / (double)dim;
    }
    return SignedPauliMap::from_dense(std::move(support), w);
}

std::optional<ChannelSplit> split_channel(const PauliChannel &c) {
    double rate = c.total_error_rate();
    if (rate <= 0) {
        return std::nullopt;
    }
    std::vector<std::pair<PauliString, double>> terms;
    for (const auto &[p, w] : c.terms()) {
        if (!p.is_identity()) {
            terms.emplace_back(p, w / rate);
        }
    }
    return ChannelSplit{rate, PauliChannel(c.support(), std::move(terms))};
}

}  // namespace sni
