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

#include "sni/noise.h"

#include <cmath>

#include <gtest/gtest.h>

#include "sni/errors.h"

using namespace sni;

namespace {

// Independent oracle: Choi-state diagonal in the Bell basis, from dense unitary/Pauli action.
std::vector<double> choi_pauli_probabilities(const std::function<Matrix(const Matrix &)> &channel, size_t q) {
    size_t d = size_t(1) << q;
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            Matrix eij = Matrix::Zero(d, d);
            eij(i, j) = 1;
            choi += kron(eij, channel(eij)) / (double)d;
        }
    }
    std::vector<double> probs;
    for (size_t k = 0; k < d * d; k++) {
        Matrix p = pauli_matrix(PauliString::from_index(q, k));
        Matrix phi = Matrix::Zero(d * d, 1);
        for (size_t i = 0; i < d; i++) {
            Matrix e = Matrix::Zero(d, 1);
            e(i, 0) = 1;
            phi += kron(e, p * e) / std::sqrt((double)d);
        }
        probs.push_back((phi.adjoint() * choi * phi)(0, 0).real());
    }
    return probs;
}

Matrix twirled_action(const Matrix &u, const Matrix &rho, size_t q) {
    Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
    size_t n = size_t(1) << (2 * q);
    for (size_t k = 0; k < n; k++) {
        Matrix p = pauli_matrix(PauliString::from_index(q, k));
        acc += p * u * p * rho * p * u.adjoint() * p;
    }
    return acc / (double)n;
}

SignedPauliMap random_signed_map(size_t q, Rng &rng) {
    std::vector<double> w(size_t(1) << (2 * q));
    for (auto &x : w) {
        x = uniform01(rng) * 2 - 1;
        if (uniform01(rng) < 0.3) {
            x = 0;
        }
    }
    return SignedPauliMap::from_dense(default_support(q), w);
}

PauliChannel random_channel(size_t q, Rng &rng, double identity_bias) {
    std::vector<double> w(size_t(1) << (2 * q));
    double total = 0;
    for (auto &x : w) {
        x = uniform01(rng);
        total += x;
    }
    w[0] += identity_bias * total;
    total *= 1 + identity_bias;
    for (auto &x : w) {
        x /= total;
    }
    return PauliChannel::from_dense(default_support(q), w);
}

}  // namespace

TEST(pauli_channel, validation) {
    ASSERT_THROW(PauliChannel::from_text({{"I", 0.5}, {"X", 0.4}}), DomainError);
    ASSERT_THROW(PauliChannel::from_text({{"I", 1.1}, {"X", -0.1}}), DomainError);
    auto c = PauliChannel::from_text({{"I", 0.9 + 5e-10}, {"X", 0.1}});
    double total = 0;
    for (const auto &t : c.terms()) {
        total += t.second;
    }
    ASSERT_NEAR(total, 1.0, 1e-15);
    ASSERT_THROW(PauliChannel(default_support(2), {{PauliString::from_text("X"), 1.0}}), DimensionError);
}

TEST(pauli_channel, depolarizing_weights) {
    auto c0 = depolarizing_channel(1, 0);
    ASSERT_EQ(c0.terms().size(), 1u);
    ASSERT_EQ(c0.probability(PauliString(1)), 1.0);
    double p = 0.37;
    auto c1 = depolarizing_channel(1, p);
    ASSERT_NEAR(c1.probability(PauliString(1)), 1 - 3 * p / 4, 1e-15);
    for (const char *s : {"X", "Y", "Z"}) {
        ASSERT_NEAR(c1.probability(PauliString::from_text(s)), p / 4, 1e-15);
    }
    auto c2 = depolarizing_channel(2, 0.005);
    ASSERT_NEAR(c2.probability(PauliString(2)), 1 - 15 * 0.005 / 16, 1e-15);
    double total = 0;
    for (const auto &t : c2.terms()) {
        total += t.second;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
    ASSERT_THROW(depolarizing_channel(1, 1.5), DomainError);
    ASSERT_THROW(depolarizing_channel(1, -0.1), DomainError);
}

TEST(pauli_channel, sampling_frequency) {
    auto c = PauliChannel::from_text({{"I", 0.9}, {"X", 0.1}});
    Rng rng(3);
    size_t n = 1000000, hits = 0;
    for (size_t k = 0; k < n; k++) {
        hits += c.sample(rng).str() == "X";
    }
    double sigma = std::sqrt(0.1 * 0.9 / n);
    ASSERT_NEAR(hits / (double)n, 0.1, 4 * sigma);
}

TEST(superoperator, coherent_rotation) {
    auto id = coherent_z_rotation(0, PauliString::from_text("Z"));
    ASSERT_LT((id.matrix() - SuperOperator::identity(1).matrix()).cwiseAbs().maxCoeff(), 1e-15);
    ASSERT_THROW(coherent_z_rotation(0.1, PauliString::from_text("I")), DomainError);

    auto half_turn = coherent_z_rotation(M_PI, PauliString::from_text("Z"));
    auto z = to_superoperator(PauliChannel::from_text({{"Z", 1.0}}));
    ASSERT_LT((half_turn.matrix() - z.matrix()).cwiseAbs().maxCoeff(), 1e-15);

    double theta = std::sqrt(2 * 0.003);
    auto s = coherent_z_rotation(theta, PauliString::from_text("Z"));
    Matrix u = pauli_rotation(theta, PauliString::from_text("Z"));
    auto oracle = choi_pauli_probabilities([&](const Matrix &rho) { return twirled_action(u, rho, 1); }, 1);
    auto twirled = pauli_twirl(s);
    for (size_t k = 0; k < 4; k++) {
        ASSERT_NEAR(twirled.dense()[k], oracle[k], 1e-12);
    }
    ASSERT_NEAR(twirled.probability(PauliString::from_text("I")), std::pow(std::cos(theta / 2), 2), 1e-12);
    ASSERT_NEAR(twirled.probability(PauliString::from_text("Z")), std::pow(std::sin(theta / 2), 2), 1e-12);
}

TEST(superoperator, twirl_routes_agree) {
    Rng rng(17);
    for (int trial = 0; trial < 20; trial++) {
        size_t q = 1 + trial % 2;
        Matrix h = Matrix::Random(1 << q, 1 << q);
        h = (h + h.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Matrix u = es.eigenvectors() *
                   es.eigenvalues().unaryExpr([](double x) { return std::exp(Complex(0, x)); }).asDiagonal() *
                   es.eigenvectors().adjoint();
        auto a = pauli_twirl(SuperOperator::unitary(default_support(q), u));
        auto b = pauli_twirl_unitary(default_support(q), u);
        auto oracle = choi_pauli_probabilities([&](const Matrix &rho) { return twirled_action(u, rho, q); }, q);
        for (size_t k = 0; k < oracle.size(); k++) {
            ASSERT_NEAR(a.dense()[k], oracle[k], 1e-12);
            ASSERT_NEAR(b.dense()[k], oracle[k], 1e-12);
        }
    }
}

TEST(superoperator, twirl_properties) {
    Rng rng(23);
    for (int trial = 0; trial < 50; trial++) {
        size_t q = 1 + trial % 3;
        auto c = random_channel(q, rng, 0.5);
        auto round_trip = pauli_twirl(to_superoperator(c));
        auto twice = pauli_twirl(to_superoperator(round_trip));
        for (size_t k = 0; k < c.dense().size(); k++) {
            ASSERT_NEAR(round_trip.dense()[k], c.dense()[k], 1e-12);
            ASSERT_NEAR(twice.dense()[k], round_trip.dense()[k], 1e-10);
        }
    }
    auto id = pauli_twirl(SuperOperator::identity(1));
    ASSERT_EQ(id.terms().size(), 1u);
    ASSERT_NEAR(id.probability(PauliString(1)), 1.0, 1e-15);
    auto dep = depolarizing_channel(1, 0.2);
    auto dep_twirled = pauli_twirl(to_superoperator(dep));
    ASSERT_NEAR(dep_twirled.probability(PauliString::from_text("Y")), 0.05, 1e-12);

    Matrix not_tp = SuperOperator::identity(1).matrix() * 0.5;
    ASSERT_THROW(pauli_twirl(SuperOperator(default_support(1), not_tp)), ContractError);
}

TEST(superoperator, column_stacking_convention) {
    Matrix u = pauli_rotation(0.3, PauliString::from_text("X"));
    Matrix rho(2, 2);
    rho << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
    auto s = SuperOperator::unitary(default_support(1), u);
    ASSERT_LT((s.apply(rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    ASSERT_TRUE(s.is_trace_preserving());
    Matrix ptm = to_superoperator(depolarizing_channel(1, 0.4)).pauli_transfer_matrix();
    ASSERT_NEAR(ptm(0, 0).real(), 1.0, 1e-14);
    ASSERT_NEAR(ptm(1, 1).real(), 0.6, 1e-14);
}

TEST(signed_map, l1_norm) {
    ASSERT_EQ(l1_pauli_norm(SignedPauliMap::identity(1)), 1.0);
    Rng rng(2);
    ASSERT_NEAR(l1_pauli_norm(random_channel(2, rng, 0.1).as_signed()), 1.0, 1e-12);

    // Truncated inverse of {I: 1-P, X: P}: (1/(1-P)) sum_k (-P/(1-P))^k X^k to order 30.
    double P = 0.1;
    double wi = 0, wx = 0;
    double r = -P / (1 - P);
    for (int k = 0; k <= 30; k++) {
        double term = std::pow(r, k) / (1 - P);
        (k % 2 == 0 ? wi : wx) += term;
    }
    auto m = SignedPauliMap::from_text({{"I", wi}, {"X", wx}});
    double series_abs = 0;
    for (int k = 0; k <= 30; k++) {
        series_abs += std::pow(P / (1 - P), k) / (1 - P);
    }
    ASSERT_NEAR(series_abs, 1.25, 1e-10);
    ASSERT_NEAR(l1_pauli_norm(m), 1 / (1 - 2 * P), 1e-10);
}

TEST(signed_map, compose_examples) {
    double p = 0.13;
    auto c = SignedPauliMap::from_text({{"I", 1 - p}, {"X", p}});
    auto cc = compose(c, c);
    ASSERT_NEAR(cc.weight(PauliString::from_text("I")), (1 - p) * (1 - p) + p * p, 1e-15);
    ASSERT_NEAR(cc.weight(PauliString::from_text("X")), 2 * p * (1 - p), 1e-15);
    auto ci = compose(c, SignedPauliMap::identity(1));
    ASSERT_EQ(ci.terms(), c.terms());
}

TEST(signed_map, submultiplicativity) {
    Rng rng(99);
    for (int trial = 0; trial < 200; trial++) {
        size_t q = 1 + trial % 2;
        auto a = random_signed_map(q, rng);
        auto b = random_signed_map(q, rng);
        ASSERT_LE(l1_pauli_norm(compose(a, b)), l1_pauli_norm(a) * l1_pauli_norm(b) + 1e-12);
    }
}

TEST(signed_map, compose_matches_superoperator_product) {
    Rng rng(7);
    auto a = random_signed_map(2, rng);
    auto b = random_signed_map(2, rng);
    Matrix lhs = to_superoperator(compose(a, b)).matrix();
    Matrix rhs = to_superoperator(b).matrix() * to_superoperator(a).matrix();
    ASSERT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(pauli_channel, split) {
    auto s = split_channel(PauliChannel::from_text({{"I", 0.9}, {"X", 0.1}}));
    ASSERT_TRUE(s.has_value());
    ASSERT_NEAR(s->rate, 0.1, 1e-15);
    ASSERT_NEAR(s->erroneous.probability(PauliString::from_text("X")), 1.0, 1e-15);
    double p = 0.08;
    auto d = split_channel(depolarizing_channel(1, p));
    ASSERT_NEAR(d->rate, 3 * p / 4, 1e-15);
    for (const char *l : {"X", "Y", "Z"}) {
        ASSERT_NEAR(d->erroneous.probability(PauliString::from_text(l)), 1.0 / 3, 1e-12);
    }
    ASSERT_FALSE(split_channel(PauliChannel::identity(1)).has_value());
}

TEST(pauli_channel, compose_channels) {
    Rng rng(8);
    auto a = random_channel(2, rng, 1.0);
    auto b = random_channel(2, rng, 1.0);
    auto c = compose(a, b);
    auto s = compose(a.as_signed(), b.as_signed());
    for (size_t k = 0; k < 16; k++) {
        ASSERT_NEAR(c.dense()[k], s.dense()[k], 1e-15);
    }
}
