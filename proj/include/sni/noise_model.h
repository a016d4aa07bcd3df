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

#ifndef SNI_NOISE_MODEL_H
#define SNI_NOISE_MODEL_H

#include <map>
#include <string>
#include <vector>

#include "sni/circuit.h"
#include "sni/simulate.h"

namespace sni {

/// Evaluates a rate expression in the noise parameter p: numbers, p, + - * /, parentheses, sqrt(...)
/// and implicit products such as "2p". Throws ConfigError on malformed input.
double eval_param(const std::string &expr, double p);

enum class NoiseTermType { Depolarizing, Coherent, Pauli };

/// One native noise term, instantiated on a kind's noisy support.
struct NoiseTerm {
    NoiseTermType type = NoiseTermType::Depolarizing;
    std::string rate = "p";   // depolarizing rate
    std::string angle;        // coherent: rotation exp(-i angle/2 axis^{(x) m})
    Letter axis = Letter::Z;
    std::vector<std::pair<std::string, std::string>> paulis;  // explicit Pauli terms: text -> rate
};

struct NoiseRule {
    std::vector<NoiseTerm> terms;
    /// Noise acts on every circuit qubit instead of the operation support.
    bool global = false;
};

enum class EncodeDecodeScope { PerQubit, Block };

struct NoiseSpec {
    /// Rules keyed by operation noise tag; "*" is the fallback.
    std::map<std::string, NoiseRule> rules;
    std::string encode_rate = "0";
    std::string decode_rate = "0";
    EncodeDecodeScope endecode_scope = EncodeDecodeScope::PerQubit;
    /// Finite set of values of p with weights; one value means a fixed parameter.
    std::vector<double> p_values{0.0};
    std::vector<double> p_weights{1.0};
};

/// Noise model instantiated for a register of n qubits.
class NoiseModel {
   public:
    NoiseModel(NoiseSpec spec, size_t qubit_count);

    const NoiseSpec &spec() const {
        return spec_;
    }
    size_t qubit_count() const {
        return n_;
    }
    size_t variant_count() const {
        return spec_.p_values.size();
    }
    double p(size_t variant) const {
        return spec_.p_values.at(variant);
    }
    const std::vector<double> &weights() const {
        return spec_.p_weights;
    }
    size_t sample_variant(Rng &rng) const;

    std::vector<size_t> noisy_support(const Operation &op) const;
    /// Native noise of an operation (global support), not yet bound.
    KindNoise native(const Operation &op, size_t variant) const;
    KindNoise encode(const std::vector<size_t> &support, size_t variant) const;
    KindNoise decode(const std::vector<size_t> &support, size_t variant) const;
    /// Native noise for every kind of the compiled circuit, bound to the register.
    NoiseTable table(const CompiledCircuit &cc, size_t variant) const;
    std::vector<NoiseTable> tables(const CompiledCircuit &cc) const;

   private:
    const NoiseRule &rule(const std::string &tag) const;
    KindNoise endecode(const std::string &rate, const std::vector<size_t> &support, size_t variant) const;

    NoiseSpec spec_;
    size_t n_;
};

}  // namespace sni

#endif
