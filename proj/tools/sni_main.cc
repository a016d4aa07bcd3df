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

// Command-line entry point: estimate-rate, mitigate, cpec, bounds and experiment subcommands.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sni/analytics.h"
#include "sni/errors.h"
#include "sni/experiments.h"

namespace {

constexpr int kExitProtocol = 1;
constexpr int kExitConfig = 2;

struct Common {
    std::string config;
    std::optional<uint64_t> seed;
    std::string out;
    size_t threads = 0;
};

void add_common(CLI::App *cmd, Common &c, bool needs_config = true) {
    auto *opt = cmd->add_option("--config", c.config, "Path of the JSON config");
    if (needs_config) {
        opt->required();
    }
    cmd->add_option("--seed", c.seed, "Override the config seed");
    cmd->add_option("--out", c.out, "Directory for result files");
    cmd->add_option("--threads", c.threads, "Worker threads (default: SNI_THREADS or 1)");
}

sni::ExperimentConfig load(const Common &c) {
    sni::ExperimentConfig cfg = sni::load_config(c.config);
    if (c.seed) {
        cfg.seed = *c.seed;
    }
    return cfg;
}

sni::RunOptions run_options(const Common &c) {
    sni::RunOptions o;
    o.threads = c.threads;
    auto start = std::chrono::steady_clock::now();
    o.progress = [start](const std::string &msg) {
        double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::fprintf(stderr, "[%7.1fs] %s\n", t, msg.c_str());
    };
    return o;
}

void print(const std::string &key, double v) {
    std::printf("%s=%.17g\n", key.c_str(), v);
}

void print(const std::string &key, uint64_t v) {
    std::printf("%s=%llu\n", key.c_str(), static_cast<unsigned long long>(v));
}

void print_mitigation(const sni::MitigationResult &r, double ideal) {
    print("estimate", r.estimate);
    print("standard_error", r.standard_error);
    print("gamma", r.gamma);
    print("ideal", ideal);
    print("bias", r.estimate - ideal);
    print("P_hat", r.rate.P_hat);
    print("M_P", r.rate.M_P);
    print("M", r.shots);
    print("M_es", r.M_es);
}

void write_single(const Common &c, const sni::ExperimentConfig &cfg, const std::string &method,
                  const sni::MitigationResult &r, double P_hat, double ideal) {
    if (c.out.empty()) {
        return;
    }
    sni::ExperimentResult res;
    res.name = method;
    res.metadata = "command=" + method + " seed=" + std::to_string(cfg.seed);
    std::string id = (cfg.experiment.empty() ? std::string("run") : cfg.experiment) + "/" + method;
    res.rows.push_back(sni::make_row(id, 0, cfg.M_P, r.shots, P_hat, r.gamma, r.estimate, ideal, r.M_es, cfg.seed));
    res.summary["estimate"] = r.estimate;
    res.summary["standard_error"] = r.standard_error;
    res.summary["gamma"] = r.gamma;
    res.summary["ideal"] = ideal;
    sni::write_result(res, c.out);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spacetime noise inversion simulator"};
    app.require_subcommand(1);

    Common rate_opts, mit_opts, cpec_opts, exp_opts;
    auto *rate_cmd = app.add_subcommand("estimate-rate", "Estimate the total error rate");
    add_common(rate_cmd, rate_opts);
    auto *mit_cmd = app.add_subcommand("mitigate", "Run the error-mitigated estimator");
    add_common(mit_cmd, mit_opts);
    auto *cpec_cmd = app.add_subcommand("cpec", "Run conventional PEC with a fitted sparse model");
    add_common(cpec_cmd, cpec_opts);

    auto *bounds_cmd = app.add_subcommand("bounds", "Print bias, sample-count and cost bounds");
    double delta = 0.1, f = 0.05, P = 0.1, sup_norm = 1;
    std::optional<double> P_hat, ratio, M, M_P, N, eps_P, eps_S, P_prime;
    bounds_cmd->add_option("--delta", delta, "Permitted error in units of the sup norm");
    bounds_cmd->add_option("--f", f, "Failure probability");
    bounds_cmd->add_option("--P", P, "Total error rate");
    bounds_cmd->add_option("--sup-norm", sup_norm, "Sup norm of the observable");
    bounds_cmd->add_option("--P-hat", P_hat, "Rate estimate (bias bound and cost moments)");
    bounds_cmd->add_option("--M", M, "Circuit runs (cost moments)");
    bounds_cmd->add_option("--M-P", M_P, "Rate-estimation instances (cost moments)");
    bounds_cmd->add_option("--distance-ratio", ratio, "d_S/d for the benchmarking overhead");
    bounds_cmd->add_option("--N", N, "Operations (Pauli-gate and super-qubit bounds)");
    bounds_cmd->add_option("--eps-P", eps_P, "Pauli-gate error");
    bounds_cmd->add_option("--eps-S", eps_S, "Super-qubit operation error");
    bounds_cmd->add_option("--P-prime", P_prime, "Rate measured with the erroneous sampler");

    auto *exp_cmd = app.add_subcommand("experiment", "Run a study: fluctuating, spatial or cost-check");
    std::string exp_name;
    exp_cmd->add_option("name", exp_name, "fluctuating | spatial | cost-check")
        ->required()
        ->check(CLI::IsMember({"fluctuating", "spatial", "cost-check"}));
    add_common(exp_cmd, exp_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (rate_cmd->parsed()) {
            sni::ExperimentConfig cfg = load(rate_opts);
            sni::Workspace ws(cfg);
            sni::RunOptions o = run_options(rate_opts);
            sni::RateEstimate r = sni::estimate_total_error_rate(ws.sampler, cfg.M_P, cfg.seed, cfg.q_boost, o.threads);
            print("P_hat", r.P_hat);
            print("M_P", r.M_P);
            print("M_error", r.M_error);
            print("P_exact", ws.P + cfg.q_boost * (1 - ws.P));
        } else if (mit_cmd->parsed()) {
            sni::ExperimentConfig cfg = load(mit_opts);
            sni::RunOptions o = run_options(mit_opts);
            sni::Workspace ws(cfg);
            sni::MitigationResult r = sni::run_mitigation(ws, cfg, o);
            print_mitigation(r, ws.ideal);
            write_single(mit_opts, cfg, "mitigate", r, r.rate.P_hat, ws.ideal);
        } else if (cpec_cmd->parsed()) {
            sni::ExperimentConfig cfg = load(cpec_opts);
            sni::RunOptions o = run_options(cpec_opts);
            sni::Workspace ws(cfg);
            sni::MitigationResult r = sni::run_conventional_pec(ws, cfg, o);
            print("estimate", r.estimate);
            print("standard_error", r.standard_error);
            print("gamma", r.gamma);
            print("ideal", ws.ideal);
            print("bias", r.estimate - ws.ideal);
            print("M_P", cfg.M_P);
            print("M", r.shots);
            write_single(cpec_opts, cfg, "cpec", r, std::nan(""), ws.ideal);
        } else if (bounds_cmd->parsed()) {
            print("t_P", sni::t_p(delta, P));
            print("M_P_min", sni::min_M_P(delta, f, P));
            print("M_min", sni::min_M(delta, f, P));
            print("asymptotic_cost_ratio", sni::asymptotic_cost_ratio(P));
            if (P_hat) {
                print("bias_bound", sni::bias_bound(P, *P_hat, sup_norm));
                if (M && M_P) {
                    sni::CostMoments c = sni::cost_moments(*M_P, *M, P, *P_hat);
                    print("cost_mean", c.mean);
                    print("cost_variance", c.variance);
                }
            }
            if (N && eps_P && eps_S) {
                sni::SuperqubitBias b = sni::pauli_superqubit_bias(
                    *N, sni::kDefaultPauliGates, sni::kDefaultPauliPerOperation, sni::kDefaultSuperqubitOps, *eps_P,
                    *eps_S, P, P_prime.value_or(P), sup_norm);
                print("superqubit_sampler_bias", b.sampler);
                print("superqubit_circuit_bias", b.circuit);
            }
            if (ratio) {
                print("surface_overhead", sni::surface_overhead(1, *ratio));
            }
        } else if (exp_cmd->parsed()) {
            sni::ExperimentConfig cfg = load(exp_opts);
            sni::RunOptions o = run_options(exp_opts);
            sni::ExperimentResult r = sni::run_experiment(exp_name, cfg, o);
            std::string dir = exp_opts.out.empty() ? "." : exp_opts.out;
            sni::write_result(r, dir);
            std::cout << r.summary.dump(2) << "\n";
        }
    } catch (const sni::ProtocolError &e) {
        std::fprintf(stderr, "protocol error: %s\n", e.what());
        return kExitProtocol;
    } catch (const sni::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const sni::DomainError &e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitProtocol;
    }
    return 0;
}
