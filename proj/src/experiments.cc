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

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sni/analytics.h"
#include "sni/errors.h"
#include "sni/simulate.h"

namespace sni {

namespace {

SpacetimeSampler build_sampler(const ExperimentConfig &cfg, const CompiledCircuit &cc, const NoiseModel &model) {
    if (cfg.sampler == SamplerChoice::Ideal) {
        return make_ideal_sampler(cc, model);
    }
    return PracticalSampler(cc, model).spacetime_sampler();
}

struct Moments {
    double mean = 0;
    double sd = 0;
    double se = 0;
};

Moments moments(const std::vector<double> &x) {
    Moments m;
    if (x.empty()) {
        return m;
    }
    for (double v : x) {
        m.mean += v;
    }
    m.mean /= double(x.size());
    if (x.size() > 1) {
        double ss = 0;
        for (double v : x) {
            ss += (v - m.mean) * (v - m.mean);
        }
        m.sd = std::sqrt(ss / double(x.size() - 1));
        m.se = m.sd / std::sqrt(double(x.size()));
    }
    return m;
}

void report(const RunOptions &options, const std::string &msg) {
    if (options.progress) {
        options.progress(msg);
    }
}

std::vector<uint64_t> grid_of(const ExperimentConfig &cfg) {
    std::vector<uint64_t> grid = cfg.M_P_grid.empty() ? std::vector<uint64_t>{cfg.M_P} : cfg.M_P_grid;
    for (uint64_t m : grid) {
        if (m == 0) {
            throw ConfigError("M_P must be positive");
        }
    }
    if (cfg.repetitions == 0) {
        throw ConfigError("repetitions must be positive");
    }
    if (cfg.M == 0) {
        throw ConfigError("M must be positive");
    }
    return grid;
}

/// Bias statistics of one method at one M_P.
nlohmann::ordered_json bias_stats(uint64_t M_P, const std::vector<double> &bias) {
    std::vector<double> abs_bias;
    for (double b : bias) {
        abs_bias.push_back(std::abs(b));
    }
    Moments b = moments(bias), a = moments(abs_bias);
    nlohmann::ordered_json j;
    j["M_P"] = M_P;
    j["mean_bias"] = b.mean;
    j["sd_bias"] = b.sd;
    j["se_bias"] = b.se;
    j["z"] = b.se > 0 ? b.mean / b.se : 0.0;
    j["mean_abs_bias"] = a.mean;
    j["se_abs_bias"] = a.se;
    return j;
}

/// Least-squares slope of log(y) against log(x).
double log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; i++) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < n; i++) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

/// Order-term pools and the conditional mean of the estimator given a rate estimate.
class ConditionalMean {
   public:
    ConditionalMean(const Workspace &ws, double P_max, uint64_t shots, uint64_t seed, double q, size_t threads,
                    const RunOptions &options) {
        double rho_max = P_max / (1 - P_max);
        size_t K = 0;
        while (K < 200 && std::pow(rho_max, double(K + 1)) / ((1 - P_max) * (1 - rho_max)) > 1e-10) {
            K++;
        }
        double x = ws.P + q * (1 - ws.P);
        std::vector<double> w(K + 1);
        double total = 0;
        for (size_t k = 0; k <= K; k++) {
            w[k] = std::pow(x, double(k) - 1) * std::pow(1 - x, -double(k) - 2) * (double(k) + x);
            if (k == 0) {
                w[k] = std::pow(1 - x, -2.0);
            }
            total += w[k];
        }
        for (size_t k = 0; k <= K; k++) {
            uint64_t n = std::max<uint64_t>(kChunk, uint64_t(std::llround(double(shots) * w[k] / total)));
            MonteCarloEstimate e = order_term(ws.cc, ws.model, ws.sampler, ws.observable, k, n, seed, k, threads, q);
            terms_.push_back(e);
            report(options, "order pool k=" + std::to_string(k) + " shots=" + std::to_string(n));
        }
    }

    size_t order_cap() const {
        return terms_.size() - 1;
    }
    const std::vector<MonteCarloEstimate> &terms() const {
        return terms_;
    }
    /// sum_k (-P/(1-P))^k A_k / (1 - P), truncated at the pool order cap.
    double value(double P) const {
        double rho = P / (1 - P), c = 1 / (1 - P), v = 0;
        for (const auto &t : terms_) {
            v += c * t.mean;
            c *= -rho;
        }
        return v;
    }
    double standard_error(double P) const {
        double rho = P / (1 - P), c = 1 / (1 - P), var = 0;
        for (const auto &t : terms_) {
            var += c * c * t.standard_error * t.standard_error;
            c *= -rho;
        }
        return std::sqrt(var);
    }

   private:
    std::vector<MonteCarloEstimate> terms_;
};

const char *kDeskScale =
    "desk-scale run: M_P up to 1e6 and M up to 1e5 shots per point instead of 2.56e8 and 2.56e7";

}  // namespace

Workspace::Workspace(const ExperimentConfig &cfg)
    : cc(cfg.circuit),
      observable(cfg.observable),
      model(cfg.noise, cc.qubit_count()),
      sampler(build_sampler(cfg, cc, model)),
      ideal(ideal_expectation(cfg.circuit, cfg.observable)),
      P(sampler.total_error_rate()) {}

uint64_t repetition_seed(uint64_t seed, size_t rep) {
    return derive_seed(seed, uint64_t(Stream::Repetition), rep);
}

RateAndFit estimate_and_fit(const Workspace &ws, uint64_t M_P, uint64_t seed, bool fit, double q, size_t threads) {
    if (M_P == 0) {
        throw EstimationError("rate estimation needs at least one spacetime instance");
    }
    struct Acc {
        uint64_t accepted = 0;
        std::optional<SparseCounts> counts;
    };
    Acc init;
    if (fit) {
        init.counts.emplace(ws.cc, ws.sampler.layout());
    }
    auto parts = for_each_rate_instance(ws.sampler, M_P, seed, q, threads, init,
                                        [](Acc &acc, const SpacetimeError &e, bool accepted) {
                                            acc.accepted += accepted;
                                            if (acc.counts) {
                                                acc.counts->add(e);
                                            }
                                        });
    RateAndFit out;
    out.rate.M_P = M_P;
    std::optional<SparseCounts> total = init.counts;
    for (const auto &p : parts) {
        out.rate.M_error += p.accepted;
        if (total) {
            total->merge(*p.counts);
        }
    }
    out.rate.P_hat = double(out.rate.M_error) / double(M_P);
    if (total) {
        out.model = total->model();
    }
    return out;
}

ResultRow make_row(std::string experiment, size_t rep, uint64_t M_P, uint64_t M, double P_hat, double gamma,
                   double estimate, double ideal, uint64_t M_es, uint64_t seed) {
    ResultRow r;
    r.experiment = std::move(experiment);
    r.rep = rep;
    r.M_P = M_P;
    r.M = M;
    r.P_hat = P_hat;
    r.gamma = gamma;
    r.estimate = estimate;
    r.ideal = ideal;
    r.bias = estimate - ideal;
    r.M_es = M_es;
    r.seed = seed;
    return r;
}

RateEstimate run_estimate_rate(const ExperimentConfig &cfg, const RunOptions &options) {
    Workspace ws(cfg);
    return estimate_total_error_rate(ws.sampler, cfg.M_P, cfg.seed, cfg.q_boost, options.threads);
}

MitigationResult run_mitigation(const ExperimentConfig &cfg, const RunOptions &options) {
    return run_mitigation(Workspace(cfg), cfg, options);
}

MitigationResult run_mitigation(const Workspace &ws, const ExperimentConfig &cfg, const RunOptions &options) {
    MitigationOptions o{cfg.M, cfg.seed, options.threads, cfg.q_boost};
    RateEstimate rate = estimate_total_error_rate(ws.sampler, cfg.M_P, cfg.seed, cfg.q_boost, options.threads);
    if (cfg.P_hat) {
        rate.P_hat = *cfg.P_hat;
    }
    return mitigate(ws.cc, ws.model, ws.sampler, ws.observable, rate, o);
}

MitigationResult run_conventional_pec(const ExperimentConfig &cfg, const RunOptions &options) {
    return run_conventional_pec(Workspace(cfg), cfg, options);
}

MitigationResult run_conventional_pec(const Workspace &ws, const ExperimentConfig &cfg, const RunOptions &options) {
    SparseModel model = fit_sparse_model(ws.cc, ws.sampler, cfg.M_P, cfg.seed, options.threads);
    MitigationOptions o{cfg.M, cfg.seed, options.threads, 0};
    MitigationResult r = run_cpec(ws.cc, ws.model, model, ws.sampler.has_endecode() ? &ws.sampler : nullptr,
                                  ws.observable, o);
    r.M_es = cfg.M_P;
    return r;
}

ExperimentResult experiment_fluctuating(const ExperimentConfig &cfg, const RunOptions &options) {
    std::vector<uint64_t> grid = grid_of(cfg);
    Workspace ws(cfg);
    const size_t R = cfg.repetitions;
    const double q = cfg.q_boost;
    const double P_eff = ws.P + q * (1 - ws.P);
    ExperimentResult out;
    out.name = "fluctuating";

    struct Point {
        RateEstimate rate;
        SparseModel model;
    };
    std::vector<std::vector<Point>> points(R, std::vector<Point>(grid.size()));
    double P_max = P_eff;
    for (size_t r = 0; r < R; r++) {
        uint64_t seed = repetition_seed(cfg.seed, r);
        for (size_t g = 0; g < grid.size(); g++) {
            RateAndFit f = estimate_and_fit(ws, grid[g], seed, true, q, options.threads);
            points[r][g] = Point{f.rate, *f.model};
            P_max = std::max(P_max, f.rate.P_hat);
        }
        report(options, "rates and fits, repetition " + std::to_string(r + 1) + "/" + std::to_string(R));
    }
    if (!(P_max < 0.5)) {
        throw ProtocolError("SNI requires P < 1/2 (estimated P = " + std::to_string(P_max) + ")");
    }
    ConditionalMean conditional(ws, P_max, cfg.pool_shots, cfg.seed, q, options.threads, options);
    const double f_exact = conditional.value(P_eff);

    std::vector<std::vector<double>> bias_sni(grid.size()), bias_direct(grid.size()), bias_cpec(grid.size());
    for (size_t r = 0; r < R; r++) {
        uint64_t seed = repetition_seed(cfg.seed, r);
        for (size_t g = 0; g < grid.size(); g++) {
            const Point &pt = points[r][g];
            MitigationOptions o{cfg.M, seed, options.threads, q};
            MitigationResult direct = mitigate(ws.cc, ws.model, ws.sampler, ws.observable, pt.rate, o);
            double gamma = 1 / (1 - 2 * pt.rate.P_hat);
            double conditional_estimate = ws.ideal + (conditional.value(pt.rate.P_hat) - f_exact);
            out.rows.push_back(make_row("fluctuating/sni", r, grid[g], cfg.M, pt.rate.P_hat, gamma,
                                        conditional_estimate, ws.ideal, direct.M_es, seed));
            bias_sni[g].push_back(out.rows.back().bias);
            out.rows.push_back(make_row("fluctuating/sni-direct", r, grid[g], cfg.M, pt.rate.P_hat, direct.gamma,
                                        direct.estimate, ws.ideal, direct.M_es, seed));
            bias_direct[g].push_back(out.rows.back().bias);
            MitigationOptions oc{cfg.M, seed, options.threads, 0};
            MitigationResult cpec = run_cpec(ws.cc, ws.model, pt.model,
                                             ws.sampler.has_endecode() ? &ws.sampler : nullptr, ws.observable, oc);
            out.rows.push_back(make_row("fluctuating/cpec", r, grid[g], cfg.M,
                                        std::numeric_limits<double>::quiet_NaN(), cpec.gamma, cpec.estimate,
                                        ws.ideal, grid[g], seed));
            bias_cpec[g].push_back(out.rows.back().bias);
        }
        report(options, "mitigation, repetition " + std::to_string(r + 1) + "/" + std::to_string(R));
    }

    auto &s = out.summary;
    s["experiment"] = "fluctuating";
    s["repetitions"] = R;
    s["M"] = cfg.M;
    s["M_P_grid"] = grid;
    s["p_values"] = cfg.noise.p_values;
    s["p_weights"] = cfg.noise.p_weights;
    s["P_exact"] = P_eff;
    s["ideal"] = ws.ideal;
    s["scale"] = kDeskScale;
    s["pools"]["order_cap"] = conditional.order_cap();
    s["pools"]["shots"] = nlohmann::ordered_json::array();
    for (const auto &t : conditional.terms()) {
        s["pools"]["shots"].push_back(t.shots);
    }
    s["pools"]["exact_rate_bias"] = f_exact - ws.ideal;
    s["pools"]["exact_rate_se"] = conditional.standard_error(P_eff);
    std::vector<double> xs, abs_sni;
    for (const auto &[name, table] : {std::pair{"sni", &bias_sni}, std::pair{"sni-direct", &bias_direct},
                                      std::pair{"cpec", &bias_cpec}}) {
        auto arr = nlohmann::ordered_json::array();
        for (size_t g = 0; g < grid.size(); g++) {
            arr.push_back(bias_stats(grid[g], (*table)[g]));
        }
        s["methods"][name] = arr;
    }
    for (size_t g = 0; g < grid.size(); g++) {
        xs.push_back(double(grid[g]));
        abs_sni.push_back(s["methods"]["sni"][g]["mean_abs_bias"].get<double>());
    }
    s["sni_abs_bias_slope"] = grid.size() > 1 ? log_slope(xs, abs_sni) : 0.0;
    if (grid.size() > 1) {
        const auto &a = s["methods"]["cpec"][grid.size() - 2], &b = s["methods"]["cpec"][grid.size() - 1];
        double diff = b["mean_bias"].get<double>() - a["mean_bias"].get<double>();
        double se = std::hypot(a["se_bias"].get<double>(), b["se_bias"].get<double>());
        s["cpec_plateau"]["difference"] = diff;
        s["cpec_plateau"]["se"] = se;
    }
    std::ostringstream meta;
    meta << "experiment=fluctuating repetitions=" << R << " M=" << cfg.M << " seed=" << cfg.seed
         << " sni=conditional-mean-with-order-pools " << kDeskScale;
    out.metadata = meta.str();
    return out;
}

ExperimentResult experiment_spatial(const ExperimentConfig &cfg, const RunOptions &options) {
    std::vector<uint64_t> grid = grid_of(cfg);
    Workspace ws(cfg);
    const size_t R = cfg.repetitions;
    const double q = cfg.q_boost;
    ExperimentResult out;
    out.name = "spatial";
    std::vector<std::vector<double>> bias_sni(grid.size()), bias_cpec(grid.size());
    for (size_t r = 0; r < R; r++) {
        uint64_t seed = repetition_seed(cfg.seed, r);
        for (size_t g = 0; g < grid.size(); g++) {
            RateAndFit f = estimate_and_fit(ws, grid[g], seed, true, q, options.threads);
            MitigationOptions o{cfg.M, seed, options.threads, q};
            MitigationResult sni = mitigate(ws.cc, ws.model, ws.sampler, ws.observable, f.rate, o);
            out.rows.push_back(make_row("spatial/sni", r, grid[g], cfg.M, f.rate.P_hat, sni.gamma, sni.estimate,
                                        ws.ideal, sni.M_es, seed));
            bias_sni[g].push_back(out.rows.back().bias);
            MitigationOptions oc{cfg.M, seed, options.threads, 0};
            MitigationResult cpec = run_cpec(ws.cc, ws.model, *f.model,
                                             ws.sampler.has_endecode() ? &ws.sampler : nullptr, ws.observable, oc);
            out.rows.push_back(make_row("spatial/cpec", r, grid[g], cfg.M, std::numeric_limits<double>::quiet_NaN(),
                                        cpec.gamma, cpec.estimate, ws.ideal, grid[g], seed));
            bias_cpec[g].push_back(out.rows.back().bias);
        }
        report(options, "spatial, repetition " + std::to_string(r + 1) + "/" + std::to_string(R));
    }
    auto &s = out.summary;
    s["experiment"] = "spatial";
    s["repetitions"] = R;
    s["M"] = cfg.M;
    s["M_P_grid"] = grid;
    s["p_values"] = cfg.noise.p_values;
    s["P_exact"] = ws.P + q * (1 - ws.P);
    s["ideal"] = ws.ideal;
    s["scale"] = kDeskScale;
    for (const auto &[name, table] : {std::pair{"sni", &bias_sni}, std::pair{"cpec", &bias_cpec}}) {
        auto arr = nlohmann::ordered_json::array();
        for (size_t g = 0; g < grid.size(); g++) {
            arr.push_back(bias_stats(grid[g], (*table)[g]));
        }
        s["methods"][name] = arr;
    }
    std::ostringstream meta;
    meta << "experiment=spatial repetitions=" << R << " M=" << cfg.M << " seed=" << cfg.seed << " " << kDeskScale;
    out.metadata = meta.str();
    return out;
}

ExperimentResult experiment_cost_check(const ExperimentConfig &cfg, const RunOptions &options) {
    grid_of(cfg);
    Workspace ws(cfg);
    const size_t R = cfg.repetitions;
    const double q = cfg.q_boost;
    const double P_eff = ws.P + q * (1 - ws.P);
    ExperimentResult out;
    out.name = "cost-check";
    std::vector<double> observed, predicted_mean, predicted_var;
    for (size_t r = 0; r < R; r++) {
        uint64_t seed = repetition_seed(cfg.seed, r);
        RateEstimate rate = estimate_total_error_rate(ws.sampler, cfg.M_P, seed, q, options.threads);
        if (cfg.P_hat) {
            rate.P_hat = *cfg.P_hat;
        }
        MitigationOptions o{cfg.M, seed, options.threads, q};
        MitigationResult m = mitigate(ws.cc, ws.model, ws.sampler, ws.observable, rate, o);
        out.rows.push_back(make_row("cost-check/sni", r, cfg.M_P, cfg.M, rate.P_hat, m.gamma, m.estimate, ws.ideal,
                                    m.M_es, seed));
        CostMoments c = cost_moments(double(cfg.M_P), double(cfg.M), P_eff, rate.P_hat);
        observed.push_back(double(m.M_es));
        predicted_mean.push_back(c.mean);
        predicted_var.push_back(c.variance);
    }
    Moments obs = moments(observed), pm = moments(predicted_mean);
    double var_pred = moments(predicted_var).mean + pm.sd * pm.sd;
    double var_obs = obs.sd * obs.sd;
    auto &s = out.summary;
    s["experiment"] = "cost-check";
    s["repetitions"] = R;
    s["M"] = cfg.M;
    s["M_P"] = cfg.M_P;
    s["P_exact"] = P_eff;
    if (cfg.P_hat) {
        s["P_hat"] = *cfg.P_hat;
    }
    s["observed_mean"] = obs.mean;
    s["predicted_mean"] = pm.mean;
    s["mean_se"] = std::sqrt(var_pred / double(R));
    s["observed_variance"] = var_obs;
    s["predicted_variance"] = var_pred;
    // Standard error of a sample variance under a near-normal law.
    s["variance_se"] = R > 1 ? var_pred * std::sqrt(2.0 / double(R - 1)) : 0.0;
    s["cost_ratio"] = (obs.mean - double(cfg.M_P)) / double(cfg.M);
    std::ostringstream meta;
    meta << "experiment=cost-check repetitions=" << R << " M=" << cfg.M << " M_P=" << cfg.M_P
         << " seed=" << cfg.seed;
    out.metadata = meta.str();
    return out;
}

ExperimentResult run_experiment(const std::string &name, const ExperimentConfig &cfg, const RunOptions &options) {
    if (name == "fluctuating") {
        return experiment_fluctuating(cfg, options);
    }
    if (name == "spatial") {
        return experiment_spatial(cfg, options);
    }
    if (name == "cost-check") {
        return experiment_cost_check(cfg, options);
    }
    throw ConfigError("unknown experiment '" + name + "' (expected fluctuating, spatial or cost-check)");
}

std::string csv_text(const ExperimentResult &result, const std::string &timestamp) {
    std::ostringstream s;
    s << "# sni-sim " << result.metadata;
    if (!timestamp.empty()) {
        s << " timestamp=" << timestamp;
    }
    s << "\n" << kCsvColumns << "\n";
    for (const auto &r : result.rows) {
        s << r.experiment << ',' << r.rep << ',' << r.M_P << ',' << r.M << ',' << format_double(r.P_hat) << ','
          << format_double(r.gamma) << ',' << format_double(r.estimate) << ',' << format_double(r.ideal) << ','
          << format_double(r.bias) << ',' << r.M_es << ',' << r.seed << '\n';
    }
    return s.str();
}

std::vector<ResultRow> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<ResultRow> rows;
    bool header = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != kCsvColumns) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected columns " + kCsvColumns);
            }
            header = true;
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) {
            f.push_back(field);
        }
        if (f.size() != 11) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 11 fields");
        }
        try {
            ResultRow r;
            r.experiment = f[0];
            r.rep = std::stoull(f[1]);
            r.M_P = std::stoull(f[2]);
            r.M = std::stoull(f[3]);
            r.P_hat = std::stod(f[4]);
            r.gamma = std::stod(f[5]);
            r.estimate = std::stod(f[6]);
            r.ideal = std::stod(f[7]);
            r.bias = std::stod(f[8]);
            r.M_es = std::stoull(f[9]);
            r.seed = std::stoull(f[10]);
            rows.push_back(r);
        } catch (const std::exception &) {
            throw ConfigError("line " + std::to_string(line_no) + ": malformed number");
        }
    }
    if (!header) {
        throw ConfigError("missing column line");
    }
    return rows;
}

void write_result(const ExperimentResult &result, const std::string &dir) {
    std::filesystem::create_directories(dir);
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    std::filesystem::path base = std::filesystem::path(dir) / result.name;
    std::ofstream csv(base.string() + ".csv");
    csv << csv_text(result, stamp);
    std::ofstream summary(base.string() + "_summary.json");
    summary << result.summary.dump(2) << "\n";
    if (!csv || !summary) {
        throw ConfigError("cannot write results to '" + dir + "'");
    }
}

}  // namespace sni
