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

#ifndef SNI_CONFIG_H
#define SNI_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sni/circuit.h"
#include "sni/noise_model.h"

namespace sni {

enum class SamplerChoice { Practical, Ideal };

/// Everything a run needs: circuit and observable, noise, sampler and budgets.
struct ExperimentConfig {
    std::string experiment;
    RandomizedDynamicCircuit circuit;
    Observable observable;
    bool twirl = true;
    NoiseSpec noise;
    SamplerChoice sampler = SamplerChoice::Practical;
    uint64_t M = 100000;
    uint64_t M_P = 100000;
    std::vector<uint64_t> M_P_grid;
    size_t repetitions = 30;
    uint64_t seed = 1;
    /// Shots of the order-term pools used by the fluctuating study.
    uint64_t pool_shots = 400000;
    double q_boost = 0;
    /// Fixed rate estimate for the cost check (estimated when absent).
    std::optional<double> P_hat;
};

/// Parses a JSON config document. Errors name the offending field (and the line for syntax errors).
/// Throws ConfigError.
ExperimentConfig parse_config(const std::string &text);
ExperimentConfig load_config(const std::string &path);

}  // namespace sni

#endif
