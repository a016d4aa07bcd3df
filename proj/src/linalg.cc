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

#include "sni/linalg.h"

#include <cmath>

#include "sni/errors.h"

namespace sni {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix result(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            result.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return result;
}

Matrix kron_little_endian(const std::vector<Matrix> &factors) {
    Matrix result = Matrix::Identity(1, 1);
    for (const auto &f : factors) {
        result = kron(f, result);
    }
    return result;
}

Matrix pauli_matrix(Letter l) {
    Matrix m(2, 2);
    const Complex i(0, 1);
    switch (l) {
        case Letter::I:
            m << 1, 0, 0, 1;
            break;
        case Letter::X:
            m << 0, 1, 1, 0;
            break;
        case Letter::Y:
            m << 0, -i, i, 0;
            break;
        case Letter::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

Matrix pauli_matrix(const PauliString &p) {
    std::vector<Matrix> factors;
    for (size_t q = 0; q < p.size(); q++) {
        factors.push_back(pauli_matrix(p.letter(q)));
    }
    return kron_little_endian(factors);
}

std::optional<PauliString> identify_pauli(const Matrix &m, double tol) {
    size_t d = m.rows();
    size_t n = 0;
    while ((size_t(1) << n) < d) {
        n++;
    }
    if ((size_t(1) << n) != d || m.cols() != m.rows()) {
        return std::nullopt;
    }
    // X part from the column permutation, Z part from signs relative to the first column.
    uint64_t x = 0;
    for (size_t r = 0; r < d; r++) {
        if (std::abs(m(r, 0)) > 0.5) {
            x = r;
            break;
        }
    }
    uint64_t z = 0;
    Complex ref = m(x, 0);
    for (size_t q = 0; q < n; q++) {
        size_t col = size_t(1) << q;
        Complex v = m(x ^ col, col);
        if (std::abs(v + ref) < std::abs(v - ref)) {
            z |= 1ULL << q;
        }
    }
    PauliString p = PauliString::from_bits(n, x, z);
    Matrix pm = pauli_matrix(p);
    Complex overlap = (pm.adjoint() * m).trace() / (double)d;
    if (std::abs(std::abs(overlap) - 1.0) > tol) {
        return std::nullopt;
    }
    if ((m - overlap * pm).cwiseAbs().maxCoeff() > tol) {
        return std::nullopt;
    }
    return p;
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < tol;
}

bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    Complex overlap = (b.adjoint() * a).trace();
    double norm = std::abs(overlap);
    if (norm < 1e-12) {
        return false;
    }
    Complex phase = overlap / norm;
    return (a - phase * b).cwiseAbs().maxCoeff() < tol;
}

Matrix pauli_rotation(double theta, const PauliString &axis) {
    Matrix p = pauli_matrix(axis);
    Matrix id = Matrix::Identity(p.rows(), p.cols());
    return std::cos(theta / 2) * id - Complex(0, 1) * std::sin(theta / 2) * p;
}

std::optional<std::vector<PauliString>> clifford_images(const Matrix &u, double tol) {
    size_t d = u.rows();
    size_t n = 0;
    while ((size_t(1) << n) < d) {
        n++;
    }
    std::vector<PauliString> images;
    for (size_t q = 0; q < n; q++) {
        for (Letter l : {Letter::X, Letter::Z}) {
            Matrix g = pauli_matrix(PauliString::single(n, q, l));
            auto image = identify_pauli(u.adjoint() * g * u, tol);
            if (!image) {
                return std::nullopt;
            }
            images.push_back(*image);
        }
    }
    return images;
}

PauliString conjugate_by_images(const std::vector<PauliString> &images, const PauliString &p) {
    if (images.size() != 2 * p.size()) {
        throw DimensionError("Clifford image table does not match Pauli size");
    }
    PauliString result(p.size());
    for (size_t q = 0; q < p.size(); q++) {
        bool x = (p.x_bits() >> q) & 1;
        bool z = (p.z_bits() >> q) & 1;
        if (x) {
            result *= images[2 * q];
        }
        if (z) {
            result *= images[2 * q + 1];
        }
    }
    return result;
}

}  // namespace sni
