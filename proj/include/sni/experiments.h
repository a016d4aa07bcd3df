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

#ifndef SNI_EXPERIMENTS_H
#define SNI_EXPERIMENTS_H

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sni/config.h"
#include "sni/engine.h"
#include "sni/pec.h"

namespace sni {

/// Compiled circuit, noise model and spacetime sampler of a config.
struct Workspace {
    CompiledCircuit cc;
    Observable observable;
    NoiseModel model;
    SpacetimeSampler sampler;
    /// Noiseless <A>.
    double ideal = 0;
    /// Exact total error rate of the sampler.
    double P = 0;

    explicit Workspace(const ExperimentConfig &cfg);
};

struct ResultRow {
    std::string experiment;
    size_t rep = 0;
    uint64_t M_P = 0;
    uint64_t M = 0;
    double P_hat = 0;
    double gamma = 1;
    double estimate = 0;
    double ideal = 0;
    double bias = 0;
    uint64_t M_es = 0;
    uint64_t seed = 0;
};

inline constexpr const char *kCsvColumns = "experiment,rep,M_P,M,P_hat,gamma,estimate,ideal,bias,M_es,seed";

struct ExperimentResult {
    std::string name;
    /// Run description for the '#' header line (the timestamp is appended when writing).
    std::string metadata;
    std::vector<ResultRow> rows;
    nlohmann::ordered_json summary;
};

struct RunOptions {
    size_t threads = 0;
    std::function<void(const std::string &)> progress;
};

/// Seed of repetition `rep`.
uint64_t repetition_seed(uint64_t seed, size_t rep);

/// Rate estimate together with a sparse-model fit on the same spacetime instances.
struct RateAndFit {
    RateEstimate rate;
    std::optional<SparseModel> model;
};
RateAndFit estimate_and_fit(const Workspace &ws, uint64_t M_P, uint64_t seed, bool fit, double q, size_t threads);

ResultRow make_row(std::string experiment, size_t rep, uint64_t M_P, uint64_t M, double P_hat, double gamma,
                   double estimate, double ideal, uint64_t M_es, uint64_t seed);

/// Single runs used by the CLI subcommands.
RateEstimate run_estimate_rate(const ExperimentConfig &cfg, const RunOptions &options = {});
MitigationResult run_mitigation(const ExperimentConfig &cfg, const RunOptions &options = {});
MitigationResult run_mitigation(const Workspace &ws, const ExperimentConfig &cfg, const RunOptions &options = {});
MitigationResult run_conventional_pec(const ExperimentConfig &cfg, const RunOptions &options = {});
MitigationResult run_conventional_pec(const Workspace &ws, const ExperimentConfig &cfg,
                                      const RunOptions &options = {});

/// Temporally fluctuating noise study: SNI (conditional and direct) and conventional PEC over M_P_grid.
ExperimentResult experiment_fluctuating(const ExperimentConfig &cfg, const RunOptions &options = {});
/// Spatially correlated noise study: SNI and conventional PEC over M_P_grid.
ExperimentResult experiment_spatial(const ExperimentConfig &cfg, const RunOptions &options = {});
/// Observed spacetime-instance cost against the predicted mean and variance.
ExperimentResult experiment_cost_check(const ExperimentConfig &cfg, const RunOptions &options = {});
/// Dispatches on the experiment name: fluctuating, spatial or cost-check.
ExperimentResult run_experiment(const std::string &name, const ExperimentConfig &cfg,
                                const RunOptions &options = {});

/// CSV text: '#' header, column line, one line per row.
std::string csv_text(const ExperimentResult &result, const std::string &timestamp = "");
/// Parses csv_text output (header skipped). Throws ConfigError on schema violations.
std::vector<ResultRow> parse_csv(const std::string &text);
/// Writes <dir>/<name>.csv and <dir>/<name>_summary.json.
void write_result(const ExperimentResult &result, const std::string &dir);

}  // namespace sni

#endif
