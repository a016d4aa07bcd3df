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

#include "sni/engine.h"

#include <cmath>

#include "sni/errors.h"
#include "sni/simulate.h"

namespace sni {

namespace {

struct ShotRunner {
    const CompiledCircuit &cc;
    const NoiseModel &model;
    const std::vector<NoiseTable> &tables;
    PureState state;
    std::vector<int8_t> outcomes;
    std::vector<uint32_t> counters;

    ShotRunner(const CompiledCircuit &c, const NoiseModel &m, const std::vector<NoiseTable> &t)
        : cc(c), model(m), tables(t), state(c.qubit_count()) {}

    /// One noisy shot with the error `err` inserted (or none); returns a(lambda, mu).
    double run(const Observable &a, const SpacetimeError *err, Rng &rng) {
        int lambda = sample_lambda(cc.circuit(), rng);
        size_t v = model.sample_variant(rng);
        const size_t n = cc.qubit_count();
        auto insert = [&](int kind, uint32_t index, PureState &s) {
            if (!err) {
                return;
            }
            const SpacetimeLayout &layout = err->layout();
            const LayoutEntry &entry = layout.entries()[kind];
            if (index >= entry.slots) {
                throw ContractError("inserted error exhausted for kind " + cc.kinds()[kind].key);
            }
            const PauliString &cell = err->cells()[layout.offset(kind) + index];
            if (!cell.is_identity()) {
                s.apply_pauli(cell.embedded(n, entry.support));
            }
        };
        run_shot(cc, tables[v], lambda, rng, state, outcomes, counters, insert);
        return a.evaluate(lambda, outcomes);
    }
};

struct Partial {
    double sum = 0;
    double sum_sq = 0;
    uint64_t shots = 0;
    SamplerTally tally;
    std::map<size_t, uint64_t> hist;
};

}  // namespace

RateEstimate estimate_total_error_rate(const SpacetimeSampler &sampler, uint64_t M_P, uint64_t seed, double q,
                                       size_t threads) {
    if (M_P == 0) {
        throw EstimationError("rate estimation needs at least one spacetime instance");
    }
    auto counts = for_each_rate_instance(sampler, M_P, seed, q, threads, uint64_t(0),
                                         [](uint64_t &c, const SpacetimeError &, bool accepted) { c += accepted; });
    RateEstimate r;
    r.M_P = M_P;
    for (auto c : counts) {
        r.M_error += c;
    }
    r.P_hat = double(r.M_error) / double(M_P);
    return r;
}

OrderDistribution::OrderDistribution(double P_hat) : P_(P_hat) {
    if (!(P_hat >= 0)) {
        throw ProtocolError("total error rate estimate must be nonnegative");
    }
    if (!(P_hat < 0.5)) {
        throw ProtocolError("SNI requires P < 1/2 (estimated P = " + std::to_string(P_hat) + ")");
    }
    log_ratio_ = P_ > 0 ? std::log(P_ / (1 - P_)) : -INFINITY;
}

double OrderDistribution::pmf(size_t k) const {
    if (P_ == 0) {
        return k == 0 ? 1 : 0;
    }
    return (1 - 2 * P_) / (1 - P_) * std::exp(double(k) * log_ratio_);
}

size_t OrderDistribution::sample(Rng &rng) const {
    if (P_ == 0) {
        return 0;
    }
    // Inverse CDF: P(k >= j) = r^j.
    double u = 1 - uniform01(rng);  // (0, 1]
    return size_t(std::floor(std::log(u) / log_ratio_));
}

MitigationResult mitigate(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                          const Observable &a, const RateEstimate &rate, const MitigationOptions &options) {
    if (options.shots == 0) {
        throw EstimationError("mitigation needs at least one shot");
    }
    OrderDistribution order(rate.P_hat);
    std::vector<NoiseTable> tables = model.tables(cc);
    size_t chunks = size_t((options.shots + kChunk - 1) / kChunk);
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, options.threads, [&](size_t c) {
        Rng rng = make_rng(options.seed, Stream::MitigationShot, c);
        ShotRunner runner(cc, model, tables);
        SpacetimeError err(sampler.layout_ptr()), scratch(sampler.layout_ptr());
        Partial &p = parts[c];
        uint64_t end = std::min<uint64_t>(options.shots, (c + 1) * kChunk);
        for (uint64_t i = c * kChunk; i < end; i++) {
            size_t k = order.sample(rng);
            sampler.processed(k, rng, err, scratch, &p.tally, options.q_boost);
            double value = runner.run(a, &err, rng);
            if (k & 1) {
                value = -value;
            }
            p.sum += value;
            p.sum_sq += value * value;
            p.shots++;
            p.hist[k]++;
        }
    });
    MitigationResult r;
    r.rate = rate;
    r.gamma = order.gamma();
    r.shots = options.shots;
    for (const auto &p : parts) {
        r.sign_sum += p.sum;
        r.sign_sq_sum += p.sum_sq;
        r.tally.merge(p.tally);
        for (const auto &[k, n] : p.hist) {
            r.k_histogram[k] += n;
        }
    }
    double m = double(options.shots);
    r.estimate = r.gamma * r.sign_sum / m;
    double mean = r.sign_sum / m;
    double var = options.shots > 1 ? std::max(0.0, (r.sign_sq_sum - m * mean * mean) / (m - 1)) : 0.0;
    r.standard_error = r.gamma * std::sqrt(var / m);
    r.M_es = rate.M_P + r.tally.instances;
    return r;
}

MitigationResult run_sni(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                         const Observable &a, uint64_t M_P, const MitigationOptions &options) {
    RateEstimate rate = estimate_total_error_rate(sampler, M_P, options.seed, options.q_boost, options.threads);
    return mitigate(cc, model, sampler, a, rate, options);
}

namespace {

MonteCarloEstimate finish(const std::vector<Partial> &parts) {
    MonteCarloEstimate e;
    double sum = 0, sum_sq = 0;
    for (const auto &p : parts) {
        sum += p.sum;
        sum_sq += p.sum_sq;
        e.shots += p.shots;
    }
    double m = double(e.shots);
    e.mean = sum / m;
    double var = e.shots > 1 ? std::max(0.0, (sum_sq - m * e.mean * e.mean) / (m - 1)) : 0.0;
    e.standard_error = std::sqrt(var / m);
    return e;
}

}  // namespace

MonteCarloEstimate unmitigated_run(const CompiledCircuit &cc, const NoiseModel &model, const Observable &a,
                                   uint64_t shots, uint64_t seed, size_t threads) {
    if (shots == 0) {
        throw EstimationError("an estimate needs at least one shot");
    }
    std::vector<NoiseTable> tables = model.tables(cc);
    size_t chunks = size_t((shots + kChunk - 1) / kChunk);
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng = make_rng(seed, Stream::UnmitigatedShot, c);
        ShotRunner runner(cc, model, tables);
        uint64_t end = std::min<uint64_t>(shots, (c + 1) * kChunk);
        for (uint64_t i = c * kChunk; i < end; i++) {
            double value = runner.run(a, nullptr, rng);
            parts[c].sum += value;
            parts[c].sum_sq += value * value;
            parts[c].shots++;
        }
    });
    return finish(parts);
}

MonteCarloEstimate order_term(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                              const Observable &a, size_t k, uint64_t shots, uint64_t seed, uint64_t stream_index,
                              size_t threads, double q) {
    if (shots == 0) {
        throw EstimationError("an estimate needs at least one shot");
    }
    std::vector<NoiseTable> tables = model.tables(cc);
    size_t chunks = size_t((shots + kChunk - 1) / kChunk);
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng = make_rng(seed, Stream::OrderPool, (stream_index << 32) + c);
        ShotRunner runner(cc, model, tables);
        SpacetimeError err(sampler.layout_ptr()), scratch(sampler.layout_ptr());
        uint64_t end = std::min<uint64_t>(shots, (c + 1) * kChunk);
        for (uint64_t i = c * kChunk; i < end; i++) {
            sampler.processed(k, rng, err, scratch, nullptr, q);
            double value = runner.run(a, &err, rng);
            parts[c].sum += value;
            parts[c].sum_sq += value * value;
            parts[c].shots++;
        }
    });
    return finish(parts);
}

}  // namespace sni
