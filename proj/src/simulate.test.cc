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

#include "sni/simulate.h"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.h"
#include "sni/circuits.h"

namespace sni {
namespace {

PauliChannel random_channel(size_t q, Rng &rng, double scale) {
    std::vector<double> w(size_t(1) << (2 * q));
    double total = 0;
    for (size_t i = 1; i < w.size(); i++) {
        w[i] = uniform01(rng);
        total += w[i];
    }
    for (size_t i = 1; i < w.size(); i++) {
        w[i] *= scale / total;
    }
    w[0] = 1 - scale;
    return PauliChannel::from_dense(default_support(q), w);
}

NoiseTable random_pauli_noise(const CompiledCircuit &cc, Rng &rng, double scale) {
    NoiseTable t;
    for (const auto &k : cc.kinds()) {
        auto support = k.representative.support();
        NoiseElement e;
        e.positions = default_support(support.size());
        e.channel = random_channel(support.size(), rng, scale);
        t.emplace_back(support, std::vector<NoiseElement>{e});
    }
    return t;
}

TEST(State, DepolarizingFullyMixes) {
    DensityState s(2);
    const size_t q0[1] = {0};
    s.apply_unitary(pauli_matrix(Letter::X) * 0.6 + pauli_matrix(Letter::Z) * 0.8, q0);
    s.apply_channel(depolarizing_channel(1, 1.0).with_support({0}));
    const size_t keep[1] = {0};
    Matrix r = s.partial_trace_keep(keep);
    EXPECT_TRUE(r.isApprox(0.5 * Matrix::Identity(2, 2), 1e-12));
    EXPECT_NEAR(s.real_trace(), 1.0, 1e-12);
}

TEST(State, PauliChannelOnZero) {
    DensityState s(1);
    s.apply_channel(PauliChannel::from_text({{"X", 1.0}}));
    EXPECT_NEAR(s.matrix()(1, 1).real(), 1.0, 1e-12);
}

TEST(State, SuperoperatorMatchesUnitary) {
    DensityState a(2), b(2);
    const size_t q[2] = {0, 1};
    Matrix h = make_gate("H", {0}).local_unitary();
    a.apply_unitary(h, std::span<const size_t>(q, 1));
    b.apply_unitary(h, std::span<const size_t>(q, 1));
    Matrix u = make_gate("CNOT", {1, 0}).local_unitary();
    a.apply_unitary(u, std::vector<size_t>{1, 0});
    b.apply_superoperator(SuperOperator::unitary({0, 1}, u), std::vector<size_t>{1, 0});
    EXPECT_TRUE(a.matrix().isApprox(b.matrix(), 1e-12));
}

TEST(State, MeasurementStatistics) {
    Rng rng = make_rng(3, Stream::Test, 0);
    PureState s(1);
    Matrix z = basis_operator("Z"), x = basis_operator("X"), a = basis_operator("A");
    EXPECT_EQ(s.measure(z, 0, rng), 1);
    size_t plus = 0, draws = 20000;
    for (size_t i = 0; i < draws; i++) {
        s.reset();
        plus += s.measure(x, 0, rng) == 1;
    }
    EXPECT_LT(std::abs(plus - draws / 2.0), 4 * std::sqrt(draws / 4.0));
    // |A> = (|0> + e^{i pi/4}|1>)/sqrt2 is the +1 eigenstate of (X+Y)/sqrt2.
    for (int i = 0; i < 100; i++) {
        s.reset();
        s.apply_unitary(make_gate("H", {0}).local_unitary(), std::vector<size_t>{0});
        s.apply_unitary(make_gate("T", {0}).local_unitary(), std::vector<size_t>{0});
        EXPECT_EQ(s.measure(a, 0, rng), 1);
        EXPECT_EQ(s.measure(a, 0, rng), 1);
    }
}

TEST(State, PrepareIsReset) {
    Rng rng = make_rng(4, Stream::Test, 0);
    for (const std::string basis : {"Z", "X", "Y", "A", "XZ", "YZ"}) {
        PureState s(2);
        s.apply_unitary(make_gate("H", {0}).local_unitary(), std::vector<size_t>{1});
        s.prepare(basis_operator(basis), basis_flip_pauli(basis), 1, rng);
        EXPECT_NEAR(s.expectation(basis_operator(basis), std::vector<size_t>{1}), 1.0, 1e-12) << basis;
        DensityState d(2);
        d.apply_unitary(make_gate("H", {0}).local_unitary(), std::vector<size_t>{1});
        d.prepare(basis_operator(basis), basis_flip_pauli(basis), 1);
        EXPECT_NEAR(d.expectation(basis_operator(basis), std::vector<size_t>{1}), 1.0, 1e-12) << basis;
    }
}

TEST(Simulate, TrotterMatchesDenseOracle) {
    auto t = trotter_circuit(8);
    const double golden = 0.8428300858899108;
    EXPECT_NEAR(oracle::trotter_x0(8), golden, 1e-12);
    EXPECT_NEAR(ideal_expectation(t.circuit, t.observable), golden, 1e-10);
}

TEST(Simulate, SimpleExpectations) {
    RandomizedDynamicCircuit c(1);
    c.append(make_prepare("X", 0));
    c.append(make_measure("X", 0, "m"));
    Observable a = product_observable(c, {"m"});
    EXPECT_NEAR(ideal_expectation(c, a), 1.0, 1e-12);
    // Z error after the preparation: <X> = 1 - 2p.
    CompiledCircuit cc(c);
    NoiseTable noise = noiseless_table(cc);
    NoiseElement e{{0}, PauliChannel::from_text({{"I", 0.9}, {"Z", 0.1}}), {}};
    noise[cc.kind_index("prepare[X](0)")] = KindNoise({0}, {e});
    EXPECT_NEAR(exact_expectation(cc, noise, a), 0.8, 1e-12);
}

TEST(Simulate, PauliSumObservable) {
    // A = Z_0 + X_0 Y_1 / 3 on a prepared state, compared with the direct operator expectation.
    RandomizedDynamicCircuit c(2);
    c.append(make_prepare("A", 0));
    c.append(make_prepare("YZ", 1));
    Observable a = append_pauli_sum_measurement(
        c, {{1.0, PauliString::from_text("ZI")}, {1.0 / 3.0, PauliString::from_text("XY")}});
    DensityState d(2);
    d.prepare(basis_operator("A"), basis_flip_pauli("A"), 0);
    d.prepare(basis_operator("YZ"), basis_flip_pauli("YZ"), 1);
    double direct = d.expectation(pauli_matrix(PauliString::from_text("ZI")), std::vector<size_t>{0, 1}) +
                    d.expectation(pauli_matrix(PauliString::from_text("XY")), std::vector<size_t>{0, 1}) / 3;
    EXPECT_NEAR(ideal_expectation(c, a), direct, 1e-12);
}

TEST(Simulate, LinearityInMaximumSpacetimeNoise) {
    RandomizedDynamicCircuit c(2);
    c.append(make_prepare("X", 0));
    c.append(make_prepare("Z", 1));
    c.append(make_gate("CNOT", {0, 1}));
    c.append(make_measure("Z", 1, "m"));
    c.append(make_gate("H", {0}), false, Condition{{}, {{0, 1}}});
    c.append(make_measure("X", 0, "out"));
    CompiledCircuit cc(c);
    Rng rng = make_rng(11, Stream::Test, 0);
    NoiseTable noise = random_pauli_noise(cc, rng, 0.2);
    EXPECT_LT(oracle::linearity_gap(cc, noise), 1e-10);
}

TEST(Simulate, TrajectoriesMatchExactEvolution) {
    auto t = trotter_circuit(2);
    CompiledCircuit cc(t.circuit);
    Rng rng = make_rng(12, Stream::Test, 0);
    NoiseTable noise = random_pauli_noise(cc, rng, 0.05);
    // Coherent over-rotation on T kinds.
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        if (cc.kinds()[k].representative.noise_tag == "T") {
            std::vector<NoiseElement> el = noise[k].elements();
            el.push_back(NoiseElement{{0}, std::nullopt, pauli_rotation(0.3, PauliString::from_text("Z"))});
            noise[k] = KindNoise(noise[k].support(), el);
        }
    }
    for (auto &k : noise) {
        k.bind(2);
    }
    double exact = exact_expectation(cc, noise, t.observable, true);
    const size_t shots = 100000;
    PureState s(2);
    std::vector<int8_t> out;
    std::vector<uint32_t> counters;
    double sum = 0, sum2 = 0;
    for (size_t i = 0; i < shots; i++) {
        Rng r = make_rng(5, Stream::Test, i);
        run_shot(cc, noise, 0, r, s, out, counters, [](int, uint32_t, PureState &) {});
        double a = t.observable.evaluate(0, out);
        sum += a;
        sum2 += a * a;
    }
    double mean = sum / shots;
    double sd = std::sqrt((sum2 / shots - mean * mean) / shots);
    EXPECT_LT(std::abs(mean - exact), 4 * sd) << mean << " vs " << exact;
}

TEST(Simulate, ShotsAreDeterministic) {
    auto t = trotter_circuit(1);
    CompiledCircuit cc(t.circuit);
    NoiseTable noise = noiseless_table(cc);
    PureState s(2);
    std::vector<int8_t> a, b;
    std::vector<uint32_t> counters;
    for (uint64_t i = 0; i < 50; i++) {
        Rng r1 = make_rng(9, Stream::Test, i), r2 = make_rng(9, Stream::Test, i);
        run_shot(cc, noise, 0, r1, s, a, counters, [](int, uint32_t, PureState &) {});
        run_shot(cc, noise, 0, r2, s, b, counters, [](int, uint32_t, PureState &) {});
        EXPECT_EQ(a, b);
    }
}

TEST(Simulate, TwirledNoiseMatchesPauliModel) {
    // With noiseless twirl Cliffords, the averaged circuit sees the twirled noise of each kind.
    auto t = trotter_circuit(2);
    CompiledCircuit cc(t.circuit);
    NoiseTable native = noiseless_table(cc);
    NoiseTable twirled = noiseless_table(cc);
    for (size_t k = 0; k < cc.kinds().size(); k++) {
        const auto &rep = cc.kinds()[k].representative;
        auto support = rep.support();
        if (rep.noise_tag == "V") {
            continue;
        }
        std::vector<NoiseElement> el;
        el.push_back(NoiseElement{default_support(support.size()), depolarizing_channel(support.size(), 0.02), {}});
        if (rep.noise_tag == "T" || rep.noise_tag == "H") {
            el.push_back(NoiseElement{{0}, std::nullopt, pauli_rotation(0.2, PauliString::from_text("Z"))});
        }
        native[k] = KindNoise(support, el);
        NoiseElement p{default_support(support.size()), native[k].twirled(), {}};
        twirled[k] = KindNoise(support, {p});
    }
    EXPECT_NEAR(exact_expectation(cc, native, t.observable, true),
                exact_expectation(cc, twirled, t.observable, true), 1e-10);
}

}  // namespace
}  // namespace sni
