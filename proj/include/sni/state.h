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

#ifndef SNI_STATE_H
#define SNI_STATE_H

#include <span>
#include <vector>

#include "sni/linalg.h"
#include "sni/noise.h"
#include "sni/pauli.h"
#include "sni/rng.h"

namespace sni {

/// Applies a 2^k x 2^k matrix to the amplitude vector on bit positions `pos` (pos[0] is the local
/// least significant qubit).
void apply_matrix(std::vector<Complex> &v, const Matrix &u, std::span<const size_t> pos);
/// Applies X^x Z^z (a Pauli up to global phase).
void apply_pauli_masks(std::vector<Complex> &v, uint64_t x, uint64_t z);

/// Pure state vector used for trajectories.
class PureState {
   public:
    explicit PureState(size_t n);

    size_t qubit_count() const {
        return n_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amp_;
    }
    void reset();
    void apply_unitary(const Matrix &u, std::span<const size_t> qubits);
    void apply_pauli(const PauliString &p);
    /// Two-outcome measurement of kappa on one qubit. Returns +1 or -1 and collapses the state.
    int measure(const Matrix &kappa, size_t qubit, Rng &rng);
    /// Resets the qubit to the +1 eigenstate of kappa; `flip` anticommutes with kappa.
    void prepare(const Matrix &kappa, const PauliString &flip, size_t qubit, Rng &rng);
    /// <psi| O |psi> for O acting on `qubits`.
    double expectation(const Matrix &o, std::span<const size_t> qubits) const;

   private:
    size_t n_;
    std::vector<Complex> amp_;
    std::vector<Complex> scratch_;
};

/// Density matrix stored as a 2n-qubit vector: v[i + 2^n j] = rho(i, j).
class DensityState {
   public:
    explicit DensityState(size_t n);
    static DensityState from_matrix(const Matrix &rho);

    size_t qubit_count() const {
        return n_;
    }
    Matrix matrix() const;
    Complex trace() const;
    double real_trace() const {
        return trace().real();
    }
    void scale(double s);
    DensityState &operator+=(const DensityState &other);

    void apply_unitary(const Matrix &u, std::span<const size_t> qubits);
    /// rho -> A rho A^dagger for any (not necessarily unitary) A.
    void apply_kraus(const Matrix &a, std::span<const size_t> qubits);
    void apply_pauli(const PauliString &p);
    /// Exact Pauli channel; the channel support holds global qubit indices.
    void apply_channel(const PauliChannel &c);
    /// Superoperator in column-stacking convention on the listed qubits.
    void apply_superoperator(const SuperOperator &s, std::span<const size_t> qubits);
    /// Unnormalized post-measurement state for the given outcome of kappa on a qubit.
    DensityState project(const Matrix &kappa, size_t qubit, int outcome) const;
    /// Reset to the +1 eigenstate of kappa (sum over both Kraus branches).
    void prepare(const Matrix &kappa, const PauliString &flip, size_t qubit);
    double expectation(const Matrix &o, std::span<const size_t> qubits) const;
    /// Reduced state on the listed qubits (in list order, little-endian).
    Matrix partial_trace_keep(std::span<const size_t> keep) const;

   private:
    size_t n_;
    std::vector<Complex> v_;
};

/// (I + s kappa) / 2.
Matrix projector(const Matrix &kappa, int outcome);

}  // namespace sni

#endif
