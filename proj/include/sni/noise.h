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

#ifndef SNI_NOISE_H
#define SNI_NOISE_H

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sni/alias.h"
#include "sni/linalg.h"
#include "sni/pauli.h"
#include "sni/rng.h"

namespace sni {

std::vector<size_t> default_support(size_t q);

/// Real-weighted mixture of Pauli conjugations on a list of qubits. Weights may be negative.
class SignedPauliMap {
   public:
    SignedPauliMap() = default;
    SignedPauliMap(std::vector<size_t> support, std::map<PauliString, double> terms);
    static SignedPauliMap identity(size_t q);
    /// Builds a map from text terms such as {{"I", 0.9}, {"X", 0.1}}.
    static SignedPauliMap from_text(std::initializer_list<std::pair<std::string_view, double>> terms);

    const std::vector<size_t> &support() const {
        return support_;
    }
    size_t qubit_count() const {
        return support_.size();
    }
    const std::map<PauliString, double> &terms() const {
        return terms_;
    }
    double weight(const PauliString &p) const;
    /// Weight vector indexed by PauliString::index().
    std::vector<double> dense() const;
    static SignedPauliMap from_dense(std::vector<size_t> support, const std::vector<double> &weights, double drop = 0.0);

   private:
    std::vector<size_t> support_;
    std::map<PauliString, double> terms_;
};

/// Probability mixture of Pauli conjugations, with an alias table for O(1) sampling.
class PauliChannel {
   public:
    static constexpr double kSumTolerance = 1e-12;
    static constexpr double kRenormalizeTolerance = 1e-9;

    PauliChannel() : PauliChannel(identity(0)) {}
    /// Validates nonnegativity and normalization; renormalizes small drift, rejects larger.
    PauliChannel(std::vector<size_t> support, std::vector<std::pair<PauliString, double>> terms);
    static PauliChannel identity(size_t q);
    static PauliChannel from_text(std::initializer_list<std::pair<std::string_view, double>> terms);
    static PauliChannel from_dense(std::vector<size_t> support, const std::vector<double> &probabilities);

    const std::vector<size_t> &support() const {
        return support_;
    }
    size_t qubit_count() const {
        return support_.size();
    }
    const std::vector<std::pair<PauliString, double>> &terms() const {
        return terms_;
    }
    double probability(const PauliString &p) const;
    double total_error_rate() const;
    std::vector<double> dense() const;
    PauliString sample(Rng &rng) const {
        return terms_[alias_.sample(rng)].first;
    }
    PauliChannel with_support(std::vector<size_t> support) const;
    SignedPauliMap as_signed() const;

   private:
    std::vector<size_t> support_;
    std::vector<std::pair<PauliString, double>> terms_;
    AliasTable alias_;
};

/// Dense superoperator on q <= 3 qubits in the column-stacking convention vec(rho)[i + d*j] = rho(i, j),
/// so that vec(A rho B) = (B^T kron A) vec(rho). Pauli-transfer entries are
/// R(s, t) = vec(sigma_s)^dagger S vec(sigma_t) / d.
class SuperOperator {
   public:
    static constexpr size_t kMaxQubits = 3;

    SuperOperator(std::vector<size_t> support, Matrix matrix);
    static SuperOperator identity(size_t q);
    static SuperOperator unitary(std::vector<size_t> support, const Matrix &u);

    const std::vector<size_t> &support() const {
        return support_;
    }
    size_t qubit_count() const {
        return support_.size();
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    bool is_trace_preserving(double tol = 1e-10) const;
    Matrix pauli_transfer_matrix() const;
    /// Applies the map to a 2^q x 2^q operator.
    Matrix apply(const Matrix &rho) const;
    /// Composition: (a.then(b))(rho) = b(a(rho)).
    SuperOperator then(const SuperOperator &b) const;

   private:
    std::vector<size_t> support_;
    Matrix matrix_;
};

PauliChannel depolarizing_channel(size_t q, double p);
SuperOperator coherent_z_rotation(double theta, const PauliString &axis);

SuperOperator to_superoperator(const PauliChannel &c);
SuperOperator to_superoperator(const SignedPauliMap &m);
PauliChannel pauli_twirl(const SuperOperator &s);
/// Twirl of the unitary channel of u, computed as |Tr(sigma u)|^2 / d^2.
PauliChannel pauli_twirl_unitary(std::vector<size_t> support, const Matrix &u);

double l1_pauli_norm(const SignedPauliMap &m);
SignedPauliMap compose(const SignedPauliMap &a, const SignedPauliMap &b);
PauliChannel compose(const PauliChannel &a, const PauliChannel &b);

/// Pauli fidelities f(s) = sum_t w(t) (-1)^<s,t>, indexed by PauliString::index().
std::vector<double> pauli_fidelities(const SignedPauliMap &m);
SignedPauliMap from_pauli_fidelities(std::vector<size_t> support, const std::vector<double> &fidelities);

struct ChannelSplit {
    double rate;
    PauliChannel erroneous;
};
/// c = (1-P) id + P E. Returns nullopt for a trivial channel (P == 0).
std::optional<ChannelSplit> split_channel(const PauliChannel &c);

}  // namespace sni

#endif
