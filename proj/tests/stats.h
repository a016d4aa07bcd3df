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

#ifndef SNI_TESTS_STATS_H
#define SNI_TESTS_STATS_H

// Goodness-of-fit helpers for statistical tests.

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdint>
#include <vector>

namespace sni::stats {

/// Pearson chi-square p-value of observed counts against expected probabilities. Adjacent bins are
/// pooled until each expected count reaches 5; the remaining tail joins the last bin.
inline double chi_square_pvalue(const std::vector<uint64_t> &observed, const std::vector<double> &probabilities) {
    double n = 0;
    for (auto c : observed) {
        n += double(c);
    }
    std::vector<double> obs, exp;
    double o = 0, e = 0;
    for (size_t i = 0; i < observed.size(); i++) {
        o += double(observed[i]);
        e += n * probabilities[i];
        if (e >= 5) {
            obs.push_back(o);
            exp.push_back(e);
            o = e = 0;
        }
    }
    if (!exp.empty()) {
        obs.back() += o;
        exp.back() += e;
    }
    if (exp.size() < 2) {
        return 1.0;
    }
    double stat = 0;
    for (size_t i = 0; i < exp.size(); i++) {
        stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    }
    boost::math::chi_squared dist(double(exp.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace sni::stats

#endif
