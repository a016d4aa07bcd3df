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

#include "sni/analytics.h"

#include <cmath>
#include <string>

#include "sni/errors.h"

namespace sni {

namespace {

void require_rate(double P, const char *name) {
    if (!(P >= 0 && P < 0.5)) {
        throw DomainError(std::string(name) + " must lie in [0, 1/2)");
    }
}

void require_budget(double delta, double f) {
    if (!(delta > 0)) {
        throw DomainError("delta must be positive");
    }
    if (!(f > 0 && f < 1)) {
        throw DomainError("f must lie in (0, 1)");
    }
}

}  // namespace

double bias_bound(double P, double P_hat, double sup_norm) {
    require_rate(P, "P");
    require_rate(P_hat, "P_hat");
    return sup_norm * std::abs(1 / (1 - 2 * P_hat) - 1 / (1 - 2 * P));
}

double t_p(double delta, double P) {
    require_rate(P, "P");
    if (!(delta > 0)) {
        throw DomainError("delta must be positive");
    }
    double g = 1 - 2 * P;
    return std::min(delta * g * g / (4 + 2 * delta * g), 0.5 - P);
}

uint64_t min_M_P(double delta, double f, double P) {
    require_budget(delta, f);
    double t = t_p(delta, P);
    return uint64_t(std::ceil(std::log(4 / f) / (2 * t * t)));
}

uint64_t min_M(double delta, double f, double P) {
    require_budget(delta, f);
    double t = t_p(delta, P);
    double g = 1 - 2 * P - 2 * t;
    if (!(g > 0)) {
        throw DomainError("1 - 2P - 2 t_P must be positive");
    }
    return uint64_t(std::ceil(8 * std::log(4 / f) / (delta * delta * g * g)));
}

CostMoments cost_moments(double M_P, double M, double P, double P_hat) {
    if (!(P > 0 && P <= 1)) {
        throw DomainError("P must lie in (0, 1]");
    }
    require_rate(P_hat, "P_hat");
    double g = 1 - 2 * P_hat;
    return CostMoments{M_P + M * P_hat / (P * g),
                       M * P_hat * (2 - P - 3 * P_hat + 2 * P * P_hat) / (P * P * g * g)};
}

double asymptotic_cost_ratio(double P) {
    require_rate(P, "P");
    double g = 1 - 2 * P;
    return 1 / (g * g) + 1 / g;
}

SuperqubitBias pauli_superqubit_bias(double N, double n_P, double chi_P, double n_S, double eps_P, double eps_S,
                                     double P, double P_prime, double sup_norm) {
    require_rate(P, "P");
    require_rate(P_prime, "P_prime");
    if (N < 0 || n_P < 0 || chi_P < 0 || n_S < 0 || eps_P < 0 || eps_S < 0 || sup_norm < 0) {
        throw DomainError("counts, error rates and the sup norm must be nonnegative");
    }
    double g = 1 - 2 * P, gp = 1 - 2 * P_prime;
    double ratio = 0;
    if (P_prime > 0) {
        ratio = std::abs(P / P_prime - 1);
    } else if (P > 0) {
        throw DomainError("P_prime must be positive when P is");
    }
    double sampler = sup_norm * std::abs(1 / gp - 1 / g) +
                     sup_norm / (g * g) * (2 * ratio + N * (n_P * eps_P + n_S * eps_S));
    double circuit = sup_norm * N * (2 * n_P * eps_P + 2 * n_S * eps_S + chi_P * eps_P) / gp;
    return SuperqubitBias{sampler, circuit};
}

double segmented_bias_bound(const std::vector<double> &P, const std::vector<double> &dP, double sup_norm) {
    if (P.size() != dP.size() || P.empty()) {
        throw DomainError("segment rates and errors must be nonempty and of equal length");
    }
    double prod = 1, sum = 0;
    for (size_t j = 0; j < P.size(); j++) {
        require_rate(P[j], "segment rate");
        if (dP[j] < 0) {
            throw DomainError("segment rate errors must be nonnegative");
        }
        prod *= 1 - 2 * P[j];
        sum += dP[j] / (1 - 2 * P[j]);
    }
    return 2 * sup_norm / prod * sum;
}

double surface_overhead(double d, double d_S) {
    if (!(d > 0 && d_S > 0)) {
        throw DomainError("code distances must be positive");
    }
    double r = d_S / d;
    return 10 * r * r * r / 3 + 5 * r * r / 3;
}

}  // namespace sni
