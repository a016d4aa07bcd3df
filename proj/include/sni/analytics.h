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

#ifndef SNI_ANALYTICS_H
#define SNI_ANALYTICS_H

#include <cstdint>
#include <vector>

namespace sni {

/// sup_norm * |1/(1 - 2 P_hat) - 1/(1 - 2 P)|.
double bias_bound(double P, double P_hat, double sup_norm);

/// t_P = min{delta (1-2P)^2 / (4 + 2 delta (1-2P)), 1/2 - P}.
double t_p(double delta, double P);
/// ceil(ln(4/f) / (2 t_P^2)).
uint64_t min_M_P(double delta, double f, double P);
/// ceil(8 ln(4/f) / (delta^2 (1 - 2P - 2 t_P)^2)).
uint64_t min_M(double delta, double f, double P);

struct CostMoments {
    double mean;
    double variance;
};
/// Mean and variance of the number of spacetime instances drawn: M_P + M P_hat / (P (1 - 2 P_hat)) and
/// M P_hat (2 - P - 3 P_hat + 2 P P_hat) / (P^2 (1 - 2 P_hat)^2).
CostMoments cost_moments(double M_P, double M, double P, double P_hat);
/// Instances per shot in the long-budget limit: 1/(1-2P)^2 + 1/(1-2P).
double asymptotic_cost_ratio(double P);

struct SuperqubitBias {
    double sampler;
    double circuit;
};
/// Bias bounds from noisy logical Pauli gates (eps_P) and super-qubit operations (eps_S).
SuperqubitBias pauli_superqubit_bias(double N, double n_P, double chi_P, double n_S, double eps_P, double eps_S,
                                     double P, double P_prime, double sup_norm);
inline constexpr double kDefaultPauliGates = 20;
inline constexpr double kDefaultPauliPerOperation = 5;
inline constexpr double kDefaultSuperqubitOps = 15;

/// Approximate bias bound for S segments: 2 sup_norm / prod(1 - 2P_j) * sum_j dP_j / (1 - 2P_j).
double segmented_bias_bound(const std::vector<double> &P, const std::vector<double> &dP, double sup_norm);

/// Benchmarking overhead of a surface-code CNOT: 10 r^3 / 3 + 5 r^2 / 3 with r = d_S / d.
double surface_overhead(double d, double d_S);

}  // namespace sni

#endif
