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

#include "sni/circuits.h"

namespace sni {

Observable product_observable(const RandomizedDynamicCircuit &c, const std::vector<std::string> &labels,
                              double coefficient) {
    ObservableTerm t{coefficient, {}};
    for (const auto &l : labels) {
        t.outcomes.push_back(c.outcome_index(l));
    }
    Observable a(std::vector<std::vector<ObservableTerm>>(c.lambda_count(), {t}));
    a.set_sup_norm(std::abs(coefficient));
    return a;
}

CircuitWithObservable trotter_circuit(size_t steps) {
    RandomizedDynamicCircuit c(2);
    c.append(make_prepare("X", 0), true);
    c.append(make_prepare("X", 1), true);
    for (size_t s = 0; s < steps; s++) {
        c.append(make_gate("CNOT", {0, 1}), true);
        c.append(make_gate("T", {1}), true);
        c.append(make_gate("CNOT", {0, 1}), true);
        for (size_t q : {0, 1}) {
            c.append(make_gate("H", {q}), true);
            c.append(make_gate("T", {q}), true);
            c.append(make_gate("H", {q}), true);
        }
    }
    c.append(make_measure("X", 0, "x0"), true);
    Observable a = product_observable(c, {"x0"});
    return {std::move(c), std::move(a)};
}

CircuitWithObservable spatial_circuit() {
    RandomizedDynamicCircuit c(4);
    auto each = [](auto make) {
        std::vector<Operation> ops;
        for (size_t q = 0; q < 4; q++) {
            ops.push_back(make(q));
        }
        return ops;
    };
    auto cnots = [](std::vector<std::pair<size_t, size_t>> pairs) {
        std::vector<Operation> ops;
        for (auto [a, b] : pairs) {
            ops.push_back(make_gate("CNOT", {a, b}));
        }
        return make_layer(ops, "clifford_layer");
    };
    c.append(make_layer(each([](size_t q) { return make_prepare("X", q); }), "prepare_layer"), true);
    auto t_layer = [&] { return make_layer(each([](size_t q) { return make_gate("T", {q}); }), "T_layer"); };
    auto h_layer = [&] {
        return make_layer(each([](size_t q) { return make_gate("H", {q}); }), "clifford_layer");
    };
    c.append(cnots({{1, 2}, {3, 0}}), true);
    c.append(t_layer(), true);
    c.append(h_layer(), true);
    c.append(cnots({{0, 1}, {2, 3}}), true);
    c.append(cnots({{0, 2}, {1, 3}}), true);
    c.append(cnots({{1, 2}, {3, 0}}), true);
    c.append(t_layer(), true);
    c.append(h_layer(), true);
    c.append(make_layer(each([](size_t q) { return make_measure("X", q, "x" + std::to_string(q)); }),
                        "measure_layer"),
             true);
    Observable a = product_observable(c, {"x0", "x1", "x2", "x3"});
    return {std::move(c), std::move(a)};
}

namespace {

NoiseRule depolarizing_rule(const std::string &rate) {
    NoiseRule r;
    r.terms.push_back(NoiseTerm{NoiseTermType::Depolarizing, rate, "", Letter::Z, {}});
    return r;
}

NoiseRule t_rule() {
    NoiseRule r = depolarizing_rule("p/2");
    r.terms.push_back(NoiseTerm{NoiseTermType::Coherent, "", "sqrt(2p)", Letter::Z, {}});
    return r;
}

}  // namespace

NoiseSpec trotter_noise(std::vector<double> p_values) {
    NoiseSpec s;
    for (const char *tag : {"CNOT", "H", "prepare", "measure", "V"}) {
        s.rules[tag] = depolarizing_rule("p");
    }
    s.rules["T"] = t_rule();
    s.encode_rate = s.decode_rate = "p/3";
    s.endecode_scope = EncodeDecodeScope::PerQubit;
    s.p_weights.assign(p_values.size(), 1.0 / double(p_values.size()));
    s.p_values = std::move(p_values);
    return s;
}

NoiseSpec spatial_noise(double p) {
    NoiseSpec s;
    for (const char *tag : {"clifford_layer", "prepare_layer", "measure_layer", "V"}) {
        s.rules[tag] = depolarizing_rule("p");
    }
    s.rules["T_layer"] = t_rule();
    s.encode_rate = s.decode_rate = "p/3";
    s.endecode_scope = EncodeDecodeScope::Block;
    s.p_values = {p};
    s.p_weights = {1.0};
    return s;
}

}  // namespace sni
