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

#include "sni/pec.h"

#include <gtest/gtest.h>

#include "sni/circuits.h"
#include "sni/errors.h"

namespace sni {
namespace {

TEST(QuasiInverse, HandValues) {
    SignedPauliMap id = quasi_inverse(PauliChannel::identity(1));
    EXPECT_NEAR(id.weight(PauliString::from_text("I")), 1.0, 1e-15);
    SignedPauliMap m = quasi_inverse(PauliChannel::from_text({{"I", 0.9}, {"X", 0.1}}));
    EXPECT_NEAR(m.weight(PauliString::from_text("I")), 1.125, 1e-12);
    EXPECT_NEAR(m.weight(PauliString::from_text("X")), -0.125, 1e-12);
    // Brute-force transform value for depolarizing p = 0.1.
    EXPECT_NEAR(l1_pauli_norm(quasi_inverse(depolarizing_channel(1, 0.1))), 1.1666666666666667, 1e-12);
    EXPECT_THROW(quasi_inverse(PauliChannel::from_text({{"I", 0.5}, {"X", 0.5}})), SingularityError);
}

TEST(QuasiInverse, InvertsRandomChannels) {
    Rng rng(3);
    for (int trial = 0; trial < 100; trial++) {
        size_t q = 1 + trial % 2;
        std::vector<double> w(size_t(1) << (2 * q));
        double total = 0;
        for (size_t i = 0; i < w.size(); i++) {
            w[i] = i == 0 ? 4.0 : uniform01(rng) * 0.3;
            total += w[i];
        }
        for (double &x : w) {
            x /= total;
        }
        PauliChannel c = PauliChannel::from_dense(default_support(q), w);
        std::vector<double> product = compose(quasi_inverse(c), c.as_signed()).dense();
        for (size_t i = 0; i < product.size(); i++) {
            EXPECT_NEAR(product[i], i == 0 ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(SparseModel, CountsPooledByType) {
    RandomizedDynamicCircuit c(2);
    c.append(make_gate("H", {0}));
    CompiledCircuit cc(c);
    auto layout = std::make_shared<const SpacetimeLayout>(std::vector<LayoutEntry>{{0, 1, {0}}});
    SparseCounts counts(cc, *layout);
    EXPECT_THROW(counts.model(), EstimationError);
    for (const char *p : {"X", "I", "I", "X"}) {
        SpacetimeError e(layout);
        e.cell(0, 0) = PauliString::from_text(p);
        counts.add(e);
    }
    SparseModel m = counts.model();
    ASSERT_EQ(m.channels.size(), 1u);
    EXPECT_NEAR(m.channels.at("H").probability(PauliString::from_text("X")), 0.5, 1e-15);
    EXPECT_NEAR(m.channels.at("H").probability(PauliString::from_text("I")), 0.5, 1e-15);
}

TEST(SparseModel, MarginalOfGlobalDepolarizing) {
    RandomizedDynamicCircuit c(4);
    std::vector<Operation> ts;
    for (size_t q = 0; q < 4; q++) {
        ts.push_back(make_gate("T", {q}));
    }
    c.append(make_layer(ts, "T_layer"));
    CompiledCircuit cc(c);
    auto layout = std::make_shared<const SpacetimeLayout>(std::vector<LayoutEntry>{{0, 1, {0, 1, 2, 3}}});
    const double p = 0.2;
    CellDistribution global(4, depolarizing_channel(4, p).dense());
    // Brute-force marginal on qubit 0.
    std::vector<double> marginal(4, 0.0);
    for (size_t i = 0; i < global.dense().size(); i++) {
        marginal[size_t(PauliString::from_index(4, i).letter(0))] += global.dense()[i];
    }
    EXPECT_NEAR(marginal[1], depolarizing_channel(1, p).probability(PauliString::from_text("X")), 1e-15);
    SparseCounts counts(cc, *layout);
    Rng rng(5);
    const int n = 50000;
    for (int i = 0; i < n; i++) {
        SpacetimeError e(layout);
        e.cell(0, 0) = global.sample(rng);
        counts.add(e);
    }
    PauliChannel fit = counts.model().channels.at("T");
    for (size_t l = 0; l < 4; l++) {
        double want = marginal[l];
        EXPECT_NEAR(fit.dense()[l], want, 4 * std::sqrt(want * (1 - want) / (4.0 * n)));
    }
}

TEST(SparseModel, FitConvergesToKindRates) {
    auto c = trotter_circuit(8);
    CompiledCircuit cc(c.circuit);
    NoiseModel noise(trotter_noise({0.003}), 2);
    SpacetimeSampler s = make_ideal_sampler(cc, noise);
    SparseModel m = fit_sparse_model(cc, s, 50000, 1);
    EXPECT_EQ(m.channels.count("H"), 1u);
    EXPECT_EQ(m.channels.count("CNOT"), 1u);
    EXPECT_EQ(m.channels.count("prepare:X"), 1u);
    // 32 H cells per instance, X with probability p/4.
    double want = 0.003 / 4, n = 50000.0 * 32;
    EXPECT_NEAR(m.channels.at("H").probability(PauliString::from_text("X")), want,
                4 * std::sqrt(want * (1 - want) / n));
}

TEST(Cpec, ExactSparseModelIsUnbiased) {
    auto c = trotter_circuit(4);
    CompiledCircuit cc(c.circuit);
    const double p = 0.01;
    NoiseSpec spec;
    for (const char *tag : {"CNOT", "H", "prepare", "measure", "V"}) {
        spec.rules[tag].terms.push_back(NoiseTerm{NoiseTermType::Depolarizing, "p", "", Letter::Z, {}});
    }
    spec.rules["T"].terms.push_back(NoiseTerm{NoiseTermType::Depolarizing, "p/2", "", Letter::Z, {}});
    spec.p_values = {p};
    NoiseModel noise(spec, 2);
    SparseModel model;
    for (const char *t : {"H", "V", "prepare:X", "measure:X"}) {
        model.channels.emplace(t, depolarizing_channel(1, p));
    }
    model.channels.emplace("T", depolarizing_channel(1, p / 2));
    model.channels.emplace("CNOT", depolarizing_channel(2, p));
    MitigationOptions o;
    o.shots = 100000;
    o.seed = 6;
    MitigationResult r = run_cpec(cc, noise, model, nullptr, c.observable, o);
    double ideal = ideal_expectation(c.circuit, c.observable);
    EXPECT_GT(r.gamma, 1.0);
    EXPECT_NEAR(r.estimate, ideal, 4 * r.standard_error);
    SparseModel missing = model;
    missing.channels.erase("T");
    EXPECT_THROW(run_cpec(cc, noise, missing, nullptr, c.observable, o), ConfigError);
}

}  // namespace
}  // namespace sni
