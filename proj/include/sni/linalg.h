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

#ifndef SNI_LINALG_H
#define SNI_LINALG_H

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sni/pauli.h"

namespace sni {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Standard Kronecker product; a's index is the more significant one.
Matrix kron(const Matrix &a, const Matrix &b);

/// Matrix of a tensor product whose factor k acts on local qubit k (qubit 0 least significant).
Matrix kron_little_endian(const std::vector<Matrix> &factors);

Matrix pauli_matrix(Letter l);
/// Matrix of a Pauli string in the little-endian convention used by the state simulators.
Matrix pauli_matrix(const PauliString &p);

/// If m is proportional to a Pauli string (|phase| = 1), returns that string.
std::optional<PauliString> identify_pauli(const Matrix &m, double tol = 1e-9);

bool is_unitary(const Matrix &m, double tol = 1e-9);
bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol = 1e-10);

/// exp(-i theta/2 axis).
Matrix pauli_rotation(double theta, const PauliString &axis);

/// Images of X_k and Z_k (k = 0..n-1) under u^dagger . u, if u is Clifford. Order: X_0, Z_0, X_1, Z_1, ...
std::optional<std::vector<PauliString>> clifford_images(const Matrix &u, double tol = 1e-9);

/// Phase-free image of p under conjugation, given the generator images from clifford_images.
PauliString conjugate_by_images(const std::vector<PauliString> &images, const PauliString &p);

}  // namespace sni

#endif
