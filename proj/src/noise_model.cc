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

#include "sni/noise_model.h"

#include <cctype>
#include <cmath>

#include "sni/errors.h"

namespace sni {

namespace {

class ExprParser {
   public:
    ExprParser(const std::string &s, double p) : s_(s), p_(p) {}

    double parse() {
        double v = sum();
        skip();
        if (i_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        }
        return v;
    }

   private:
    [[noreturn]] void fail(const std::string &why) const {
        throw ConfigError("bad rate expression '" + s_ + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) {
            i_++;
        }
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            i_++;
            return true;
        }
        return false;
    }
    double sum() {
        double v = product();
        while (true) {
            if (eat('+')) {
                v += product();
            } else if (eat('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) {
            return false;
        }
        char c = s_[i_];
        return std::isdigit((unsigned char)c) || c == '.' || c == '(' || std::isalpha((unsigned char)c);
    }
    double product() {
        double v = unary();
        while (true) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                v /= unary();
            } else if (starts_factor()) {
                v *= unary();
            } else {
                return v;
            }
        }
    }
    double unary() {
        if (eat('-')) {
            return -unary();
        }
        return atom();
    }
    double atom() {
        skip();
        if (i_ >= s_.size()) {
            fail("unexpected end");
        }
        char c = s_[i_];
        if (c == '(') {
            i_++;
            double v = sum();
            if (!eat(')')) {
                fail("missing ')'");
            }
            return v;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            size_t used = 0;
            double v = std::stod(s_.substr(i_), &used);
            i_ += used;
            return v;
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = i_;
            while (i_ < s_.size() && std::isalpha((unsigned char)s_[i_])) {
                i_++;
            }
            std::string name = s_.substr(start, i_ - start);
            if (name == "p") {
                return p_;
            }
            if (name == "pi") {
                return M_PI;
            }
            if (name == "sqrt") {
                if (!eat('(')) {
                    fail("sqrt needs parentheses");
                }
                double v = sum();
                if (!eat(')')) {
                    fail("missing ')'");
                }
                if (v < 0) {
                    fail("sqrt of a negative value");
                }
                return std::sqrt(v);
            }
            fail("unknown name '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string &s_;
    double p_;
    size_t i_ = 0;
};

Matrix axis_rotation(double theta, Letter axis, size_t m) {
    PauliString a(m);
    for (size_t k = 0; k < m; k++) {
        a.set(k, axis);
    }
    return pauli_rotation(theta, a);
}

}  // namespace

double eval_param(const std::string &expr, double p) {
    return ExprParser(expr, p).parse();
}

NoiseModel::NoiseModel(NoiseSpec spec, size_t qubit_count) : spec_(std::move(spec)), n_(qubit_count) {
    if (spec_.p_values.empty() || spec_.p_values.size() != spec_.p_weights.size()) {
        throw ConfigError("noise parameter values and weights must be nonempty and of equal length");
    }
    double total = 0;
    for (double w : spec_.p_weights) {
        if (!(w >= 0)) {
            throw ConfigError("noise parameter weights must be nonnegative");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw ConfigError("noise parameter weights must have a positive sum");
    }
    for (double &w : spec_.p_weights) {
        w /= total;
    }
    // Validate every expression once for each value of p.
    for (double p : spec_.p_values) {
        eval_param(spec_.encode_rate, p);
        eval_param(spec_.decode_rate, p);
        for (const auto &[tag, rule] : spec_.rules) {
            for (const auto &t : rule.terms) {
                if (t.type == NoiseTermType::Depolarizing) {
                    eval_param(t.rate, p);
                } else if (t.type == NoiseTermType::Coherent) {
                    eval_param(t.angle, p);
                } else {
                    for (const auto &pr : t.paulis) {
                        eval_param(pr.second, p);
                    }
                }
            }
        }
    }
}

size_t NoiseModel::sample_variant(Rng &rng) const {
    if (spec_.p_weights.size() == 1) {
        return 0;
    }
    double u = uniform01(rng), acc = 0;
    for (size_t v = 0; v < spec_.p_weights.size(); v++) {
        acc += spec_.p_weights[v];
        if (u < acc) {
            return v;
        }
    }
    return spec_.p_weights.size() - 1;
}

const NoiseRule &NoiseModel::rule(const std::string &tag) const {
    auto it = spec_.rules.find(tag);
    if (it == spec_.rules.end()) {
        it = spec_.rules.find("*");
    }
    if (it == spec_.rules.end()) {
        throw ConfigError("no noise rule for operations tagged '" + tag + "'");
    }
    return it->second;
}

std::vector<size_t> NoiseModel::noisy_support(const Operation &op) const {
    if (rule(op.noise_tag).global) {
        return default_support(n_);
    }
    return op.support();
}

KindNoise NoiseModel::native(const Operation &op, size_t variant) const {
    const NoiseRule &r = rule(op.noise_tag);
    std::vector<size_t> support = r.global ? default_support(n_) : op.support();
    size_t m = support.size();
    double p = this->p(variant);
    std::vector<NoiseElement> elements;
    for (const auto &t : r.terms) {
        NoiseElement e;
        e.positions = default_support(m);
        switch (t.type) {
            case NoiseTermType::Depolarizing: {
                double rate = eval_param(t.rate, p);
                if (rate == 0) {
                    continue;
                }
                try {
                    e.channel = depolarizing_channel(m, rate);
                } catch (const DomainError &err) {
                    throw ConfigError(std::string("noise for '") + op.noise_tag + "': " + err.what());
                }
                break;
            }
            case NoiseTermType::Coherent: {
                double theta = eval_param(t.angle, p);
                if (theta == 0) {
                    continue;
                }
                e.unitary = axis_rotation(theta, t.axis, m);
                break;
            }
            case NoiseTermType::Pauli: {
                std::vector<double> dense(size_t(1) << (2 * m), 0.0);
                double rest = 1;
                for (const auto &[text, expr] : t.paulis) {
                    PauliString ps = PauliString::from_text(text);
                    if (ps.size() != m) {
                        throw ConfigError("Pauli noise term " + text + " does not match the " + std::to_string(m) +
                                          "-qubit support of '" + op.noise_tag + "'");
                    }
                    double w = eval_param(expr, p);
                    dense[ps.index()] += w;
                    rest -= w;
                }
                dense[0] += rest;
                try {
                    e.channel = PauliChannel::from_dense(default_support(m), dense);
                } catch (const DomainError &err) {
                    throw ConfigError(std::string("noise for '") + op.noise_tag + "': " + err.what());
                }
                break;
            }
        }
        elements.push_back(std::move(e));
    }
    return KindNoise(std::move(support), std::move(elements));
}

KindNoise NoiseModel::endecode(const std::string &rate_expr, const std::vector<size_t> &support,
                               size_t variant) const {
    double rate = eval_param(rate_expr, p(variant));
    std::vector<NoiseElement> elements;
    if (rate != 0) {
        if (spec_.endecode_scope == EncodeDecodeScope::Block) {
            elements.push_back(NoiseElement{default_support(support.size()), depolarizing_channel(support.size(), rate), {}});
        } else {
            for (size_t k = 0; k < support.size(); k++) {
                elements.push_back(NoiseElement{{k}, depolarizing_channel(1, rate), {}});
            }
        }
    }
    return KindNoise(support, std::move(elements));
}

KindNoise NoiseModel::encode(const std::vector<size_t> &support, size_t variant) const {
    return endecode(spec_.encode_rate, support, variant);
}

KindNoise NoiseModel::decode(const std::vector<size_t> &support, size_t variant) const {
    return endecode(spec_.decode_rate, support, variant);
}

NoiseTable NoiseModel::table(const CompiledCircuit &cc, size_t variant) const {
    if (cc.qubit_count() != n_) {
        throw ConfigError("noise model and circuit have different qubit counts");
    }
    NoiseTable t;
    for (const auto &k : cc.kinds()) {
        t.push_back(native(k.representative, variant));
        t.back().bind(n_);
    }
    return t;
}

std::vector<NoiseTable> NoiseModel::tables(const CompiledCircuit &cc) const {
    std::vector<NoiseTable> out;
    for (size_t v = 0; v < variant_count(); v++) {
        out.push_back(table(cc, v));
    }
    return out;
}

}  // namespace sni
