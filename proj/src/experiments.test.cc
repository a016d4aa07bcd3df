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

#include "sni/experiments.h"

#include <gtest/gtest.h>

#include <cmath>

#include "sni/errors.h"

namespace sni {
namespace {

std::string config_path(const std::string &name) {
    return std::string(SNI_CONFIG_DIR) + "/" + name;
}

std::string without_header(const std::string &csv) {
    return csv.substr(csv.find('\n') + 1);
}

TEST(Experiments, NoiselessDemo) {
    ExperimentConfig cfg = load_config(config_path("noiseless_demo.json"));
    Workspace ws(cfg);
    MitigationResult r = run_mitigation(ws, cfg);
    EXPECT_EQ(r.gamma, 1);
    EXPECT_NEAR(r.estimate, ws.ideal, 1e-12);
    EXPECT_EQ(r.M_es, cfg.M_P);
}

TEST(Experiments, CostCheckRowsAndRoundTrip) {
    ExperimentConfig cfg = load_config(config_path("cost_check.json"));
    cfg.repetitions = 20;
    ExperimentResult r = experiment_cost_check(cfg);
    ASSERT_EQ(r.rows.size(), 20u);
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.experiment, "cost-check/sni");
        EXPECT_NEAR(row.bias, row.estimate - row.ideal, 1e-12);
        EXPECT_EQ(row.P_hat, 0.25);
    }
    std::string text = csv_text(r, "2026-01-01T00:00:00Z");
    std::vector<ResultRow> back = parse_csv(text);
    ASSERT_EQ(back.size(), r.rows.size());
    for (size_t i = 0; i < back.size(); i++) {
        EXPECT_EQ(back[i].estimate, r.rows[i].estimate);
        EXPECT_EQ(back[i].M_es, r.rows[i].M_es);
        EXPECT_EQ(back[i].seed, r.rows[i].seed);
        EXPECT_NEAR(back[i].bias, back[i].estimate - back[i].ideal, 1e-12);
    }
    EXPECT_THROW(parse_csv("# x\nexperiment,rep\n"), ConfigError);
    EXPECT_THROW(parse_csv(std::string(kCsvColumns) + "\na,1,2\n"), ConfigError);
}

TEST(Experiments, ReproducibleAndThreadInvariant) {
    ExperimentConfig cfg = load_config(config_path("cost_check.json"));
    cfg.repetitions = 4;
    cfg.M = 5000;
    RunOptions one, three;
    one.threads = 1;
    three.threads = 3;
    std::string a = csv_text(experiment_cost_check(cfg, one), "t1");
    std::string b = csv_text(experiment_cost_check(cfg, three), "t2");
    EXPECT_NE(a, b);
    EXPECT_EQ(without_header(a), without_header(b));
    cfg.seed++;
    EXPECT_NE(without_header(csv_text(experiment_cost_check(cfg, one))), without_header(a));
}

TEST(Experiments, SpatialWithoutNoise) {
    ExperimentConfig cfg = load_config(config_path("spatial.json"));
    cfg.noise.p_values = {0.0};
    cfg.repetitions = 2;
    cfg.M = 2000;
    cfg.M_P_grid = {1000};
    ExperimentResult r = experiment_spatial(cfg);
    ASSERT_EQ(r.rows.size(), 4u);
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.gamma, 1) << row.experiment;
        EXPECT_LT(std::abs(row.bias), 5 / std::sqrt(double(row.M))) << row.experiment;
    }
}

TEST(Experiments, FluctuatingSmall) {
    ExperimentConfig cfg = load_config(config_path("fluctuating.json"));
    cfg.repetitions = 2;
    cfg.M = 2000;
    cfg.M_P_grid = {2000, 8000};
    cfg.pool_shots = 20000;
    ExperimentResult r = experiment_fluctuating(cfg);
    EXPECT_EQ(r.rows.size(), 2u * 2u * 3u);
    const auto &s = r.summary;
    EXPECT_EQ(s["methods"]["sni"].size(), 2u);
    EXPECT_TRUE(s.contains("sni_abs_bias_slope"));
    EXPECT_TRUE(s.contains("cpec_plateau"));
    for (const auto &row : r.rows) {
        EXPECT_NEAR(row.bias, row.estimate - row.ideal, 1e-12);
        if (row.experiment == "fluctuating/cpec") {
            EXPECT_TRUE(std::isnan(row.P_hat));
            EXPECT_EQ(row.M_es, row.M_P);
        } else {
            EXPECT_GT(row.M_es, row.M_P);
        }
    }
    // The conditional estimate equals the ideal value when the rate estimate is exact.
    EXPECT_LT(std::abs(s["pools"]["exact_rate_bias"].get<double>()),
              5 * s["pools"]["exact_rate_se"].get<double>());
}

TEST(Experiments, Dispatch) {
    ExperimentConfig cfg = load_config(config_path("cost_check.json"));
    EXPECT_THROW(run_experiment("temporal", cfg), ConfigError);
    cfg.repetitions = 0;
    EXPECT_THROW(run_experiment("cost-check", cfg), ConfigError);
    ExperimentConfig bad = load_config(config_path("cost_check.json"));
    bad.P_hat = 0.5;
    EXPECT_THROW(run_mitigation(bad), ProtocolError);
}

}  // namespace
}  // namespace sni
