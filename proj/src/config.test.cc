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

#include "sni/config.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "sni/errors.h"
#include "sni/simulate.h"

namespace sni {
namespace {

std::string config_path(const std::string &name) {
    return std::string(SNI_CONFIG_DIR) + "/" + name;
}

std::string message_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

const char *kSmall = R"({
  "circuit": {
    "qubits": 2,
    "ops": [
      {"prepare": "Z", "qubit": 0},
      {"prepare": "Z", "qubit": 1},
      {"repeat": 3, "body": [{"gate": "H", "qubits": [0]}, {"gate": "CNOT", "qubits": [0, 1]}]},
      {"measure": "Z", "qubit": 0, "label": "a"},
      {"gate": "X", "qubits": [1], "when": {"outcomes": {"a": -1}}},
      {"measure": "Z", "qubit": 1, "label": "b"}
    ],
    "observable": {"product": ["b"]}
  },
  "noise": {"rules": {"*": [{"kind": "depolarizing", "p": "p"}]}},
  "fluctuation": {"values": [0.01, 0.02], "weights": [1, 3]},
  "M": 1e4
})";

TEST(Config, ShippedConfigsParse) {
    size_t count = 0;
    for (const auto &entry : std::filesystem::directory_iterator(SNI_CONFIG_DIR)) {
        if (entry.path().extension() == ".json") {
            EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
            count++;
        }
    }
    EXPECT_GE(count, 5u);
}

TEST(Config, PresetsMatchExplicitRules) {
    ExperimentConfig trotter = load_config(config_path("fluctuating.json"));
    EXPECT_EQ(trotter.experiment, "fluctuating");
    EXPECT_EQ(trotter.noise.p_values, (std::vector<double>{0.001, 0.003}));
    EXPECT_EQ(trotter.noise.p_weights, (std::vector<double>{0.5, 0.5}));
    EXPECT_EQ(trotter.M_P_grid, (std::vector<uint64_t>{10000, 100000, 1000000}));
    EXPECT_NEAR(ideal_expectation(trotter.circuit, trotter.observable), 0.84283008588990671, 1e-12);
    ExperimentConfig spatial = load_config(config_path("spatial.json"));
    EXPECT_EQ(spatial.noise.endecode_scope, EncodeDecodeScope::Block);
    EXPECT_EQ(spatial.noise.p_values, (std::vector<double>{0.005}));
    EXPECT_EQ(spatial.noise.rules.at("T_layer").terms.size(), 2u);
}

TEST(Config, RepeatConditionAndWeights) {
    ExperimentConfig c = parse_config(kSmall);
    EXPECT_EQ(c.circuit.slots().size(), 2u + 6u + 3u);
    ASSERT_TRUE(c.circuit.slots()[9].when.has_value());
    EXPECT_EQ(c.circuit.slots()[9].when->outcomes.size(), 1u);
    EXPECT_NEAR(c.noise.p_weights[0], 0.25, 1e-15);
    EXPECT_NEAR(c.noise.p_weights[1], 0.75, 1e-15);
    EXPECT_EQ(c.M, 10000u);
    EXPECT_TRUE(c.circuit.slots()[2].twirl);
}

TEST(Config, PauliSumObservable) {
    ExperimentConfig c = parse_config(R"({
      "circuit": {"qubits": 2, "ops": [{"prepare": "X", "qubit": 0}, {"prepare": "Z", "qubit": 1}],
                  "observable": {"pauli_sum": [{"coefficient": 0.5, "pauli": "XI"}, {"coefficient": 2, "pauli": "IZ"}]}},
      "noise": {"rules": {"*": []}}
    })");
    EXPECT_NEAR(ideal_expectation(c.circuit, c.observable), 2.5, 1e-12);
}

TEST(Config, DiagnosticsNameTheField) {
    EXPECT_NE(message_of(R"({"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"}, "sed": 1})")
                  .find("unknown field 'sed'"),
              std::string::npos);
    std::string bad_qubit = message_of(R"({"circuit": {"qubits": 1, "ops": [{"gate": "H", "qubits": [3]}],
        "observable": {"product": []}}, "noise": {"rules": {"*": []}}})");
    EXPECT_NE(bad_qubit.find("config.circuit.ops[0].qubits[0]"), std::string::npos) << bad_qubit;
    std::string syntax = message_of("{\n  \"circuit\": {\n    \"qubits\": 2,,\n");
    EXPECT_NE(syntax.find("line 3"), std::string::npos) << syntax;
    std::string expr = message_of(R"({"circuit": {"preset": "trotter"},
        "noise": {"rules": {"*": [{"kind": "depolarizing", "p": "p**"}]}}})");
    EXPECT_NE(expr.find("config.noise.rules.*[0].p"), std::string::npos) << expr;
}

TEST(Config, MissingRuleAndBadValues) {
    EXPECT_THROW(parse_config(R"({"circuit": {"preset": "trotter"}, "noise": {"rules": {"H": []}}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"}, "M": -1})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"}, "M": 1.5})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"},
                                  "fluctuation": {"values": [0.1], "weights": [0]}})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"}, "p": 2})"),
                 ConfigError);
    EXPECT_THROW(load_config(config_path("missing.json")), ConfigError);
}

}  // namespace
}  // namespace sni
