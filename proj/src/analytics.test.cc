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

#include <gtest/gtest.h>

#include <cmath>

#include "sni/errors.h"

namespace sni {
namespace {

TEST(Analytics, BiasBound) {
    EXPECT_EQ(bias_bound(0.2, 0.2, 1), 0);
    EXPECT_NEAR(bias_bound(0.2, 0.25, 1), 1.0 / 3, 1e-15);
    double prev_lo = 0, prev_hi = 0;
    for (int i = 1; i <= 10; i++) {
        double d = 0.015 * i;
        double lo = bias_bound(0.2, 0.2 - d, 1), hi = bias_bound(0.2, 0.2 + d, 1);
        EXPECT_GT(lo, prev_lo);
        EXPECT_GT(hi, prev_hi);
        prev_lo = lo;
        prev_hi = hi;
    }
    EXPECT_THROW(bias_bound(0.5, 0.1, 1), DomainError);
    EXPECT_THROW(bias_bound(0.1, 0.6, 1), DomainError);
}

TEST(Analytics, SampleBounds) {
    EXPECT_NEAR(t_p(0.1, 0.1), 0.064 / 4.16, 1e-15);
    EXPECT_NEAR(t_p(0.1, 0.1), 0.015385, 5e-7);
    EXPECT_NEAR(t_p(10, 0.45), 10 * 0.01 / 6.0, 1e-15);
    EXPECT_LT(t_p(1e9, 0.45), 0.05);
    EXPECT_NEAR(t_p(1e9, 0.45), 0.05, 1e-9);
    double t = t_p(0.1, 0.1);
    EXPECT_EQ(min_M_P(0.1, 0.05, 0.1), uint64_t(std::ceil(std::log(80.0) / (2 * t * t))));
    EXPECT_EQ(min_M(0.1, 0.05, 0.1), uint64_t(std::ceil(8 * std::log(80.0) / (0.01 * std::pow(0.8 - 2 * t, 2)))));
    EXPECT_LT(t_p(0.1, 0.499), 1e-6);
    EXPECT_GT(min_M_P(0.1, 0.05, 0.499), min_M_P(0.1, 0.05, 0.4));
    EXPECT_GT(min_M(0.1, 0.05, 0.499), min_M(0.1, 0.05, 0.4));
    EXPECT_THROW(t_p(0.1, 0.5), DomainError);
    EXPECT_THROW(min_M(0.1, 1.5, 0.1), DomainError);
}

TEST(Analytics, CostMoments) {
    CostMoments zero = cost_moments(100, 1000, 0.2, 0);
    EXPECT_EQ(zero.mean, 100);
    EXPECT_EQ(zero.variance, 0);
    EXPECT_NEAR(cost_moments(0, 1e6, 0.25, 0.25).mean, 2e6, 1e-6);
    EXPECT_NEAR(asymptotic_cost_ratio(0.25), 6.0, 1e-15);
    EXPECT_THROW(cost_moments(0, 1, 0, 0.1), DomainError);
}

TEST(Analytics, SuperqubitBias) {
    SuperqubitBias b = pauli_superqubit_bias(100, kDefaultPauliGates, kDefaultPauliPerOperation, kDefaultSuperqubitOps,
                                             0, 0, 0.2, 0.2, 1);
    EXPECT_EQ(b.sampler, 0);
    EXPECT_EQ(b.circuit, 0);
    double prev_s = 0, prev_c = 0;
    for (int i = 1; i <= 5; i++) {
        SuperqubitBias x = pauli_superqubit_bias(100, 20, 5, 15, 1e-5 * i, 2e-5 * i, 0.2, 0.21, 1);
        EXPECT_GT(x.sampler, prev_s);
        EXPECT_GT(x.circuit, prev_c);
        prev_s = x.sampler;
        prev_c = x.circuit;
    }
    EXPECT_THROW(pauli_superqubit_bias(1, 1, 1, 1, -1, 0, 0.1, 0.1, 1), DomainError);
}

TEST(Analytics, SegmentsAndOverhead) {
    EXPECT_NEAR(segmented_bias_bound({0.2}, {0.01}, 1), 2 * 0.01 / (0.6 * 0.6), 1e-15);
    EXPECT_GT(segmented_bias_bound({0.1, 0.1}, {0.01, 0.01}, 1), segmented_bias_bound({0.1}, {0.01}, 1));
    EXPECT_NEAR(surface_overhead(1, 2), 100.0 / 3, 1e-12);
    EXPECT_NEAR(surface_overhead(10, 13), 10, 0.5);
    EXPECT_THROW(surface_overhead(0, 1), DomainError);
    EXPECT_THROW(segmented_bias_bound({0.6}, {0.0}, 1), DomainError);
}

}  // namespace
}  // namespace sni
