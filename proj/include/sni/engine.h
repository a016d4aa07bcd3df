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

#ifndef SNI_ENGINE_H
#define SNI_ENGINE_H

#include <map>
#include <vector>

#include "sni/circuit.h"
#include "sni/noise_model.h"
#include "sni/parallel.h"
#include "sni/sampler.h"

namespace sni {

/// Shots (or instances) per random stream. Stream c covers items [c * kChunk, (c + 1) * kChunk), so
/// results do not depend on the thread count and shorter runs are prefixes of longer ones.
inline constexpr uint64_t kChunk = 4096;

struct RateEstimate {
    double P_hat = 0;
    uint64_t M_P = 0;
    uint64_t M_error = 0;
};

/// Draws `count` spacetime instances from the RateEstimation stream and calls
/// visit(acc, instance, accepted) with one accumulator per chunk. Returns the accumulators in chunk order.
template <typename Acc, typename Visit>
std::vector<Acc> for_each_rate_instance(const SpacetimeSampler &sampler, uint64_t count, uint64_t seed, double q,
                                        size_t threads, const Acc &init, Visit &&visit) {
    size_t chunks = size_t((count + kChunk - 1) / kChunk);
    std::vector<Acc> acc(chunks, init);
    parallel_for(chunks, threads, [&](size_t c) {
        Rng rng = make_rng(seed, Stream::RateEstimation, c);
        SpacetimeError e(sampler.layout_ptr());
        uint64_t end = std::min<uint64_t>(count, (c + 1) * kChunk);
        for (uint64_t i = c * kChunk; i < end; i++) {
            bool accepted = sampler.draw_boosted(rng, e, q);
            visit(acc[c], e, accepted);
        }
    });
    return acc;
}

/// P_hat as the (boosted) nontrivial fraction of M_P spacetime instances.
RateEstimate estimate_total_error_rate(const SpacetimeSampler &sampler, uint64_t M_P, uint64_t seed, double q = 0,
                                       size_t threads = 0);

/// Order distribution Pro(k) = (1 - 2P) P^k / (1 - P)^(k+1), a geometric law with ratio P/(1-P).
class OrderDistribution {
   public:
    /// Throws ProtocolError unless 0 <= P_hat < 1/2.
    explicit OrderDistribution(double P_hat);
    double pmf(size_t k) const;
    size_t sample(Rng &rng) const;
    double gamma() const {
        return 1 / (1 - 2 * P_);
    }

   private:
    double P_;
    double log_ratio_;
};

struct MitigationOptions {
    uint64_t shots = 0;
    uint64_t seed = 0;
    size_t threads = 0;
    /// Trivial instances count as nontrivial with this probability; the rate must be the boosted one.
    double q_boost = 0;
};

struct MitigationResult {
    double estimate = 0;
    double gamma = 1;
    RateEstimate rate;
    uint64_t shots = 0;
    SamplerTally tally;
    std::map<size_t, uint64_t> k_histogram;
    double sign_sum = 0;     // sum of eta * a
    double sign_sq_sum = 0;  // sum of (eta * a)^2
    /// Spacetime instances used: M_P plus the instances drawn during mitigation.
    uint64_t M_es = 0;
    double standard_error = 0;
};

/// Runs the error-mitigated estimator with a frozen rate. The circuit's noise parameter variant is drawn
/// once per shot.
MitigationResult mitigate(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                          const Observable &a, const RateEstimate &rate, const MitigationOptions &options);

/// Rate estimation with M_P instances followed by mitigation.
MitigationResult run_sni(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                         const Observable &a, uint64_t M_P, const MitigationOptions &options);

struct MonteCarloEstimate {
    double mean = 0;
    double standard_error = 0;
    uint64_t shots = 0;
};

/// Plain noisy estimate of <A> (no insertion).
MonteCarloEstimate unmitigated_run(const CompiledCircuit &cc, const NoiseModel &model, const Observable &a,
                                   uint64_t shots, uint64_t seed, size_t threads = 0);

/// Mean of a over shots whose inserted error is an order-k processed sample (the order-k term A_k).
/// `stream_index` separates pools drawn with the same seed.
MonteCarloEstimate order_term(const CompiledCircuit &cc, const NoiseModel &model, const SpacetimeSampler &sampler,
                              const Observable &a, size_t k, uint64_t shots, uint64_t seed, uint64_t stream_index,
                              size_t threads = 0, double q = 0);

}  // namespace sni

#endif
