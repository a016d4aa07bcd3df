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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sni/circuits.h"
#include "sni/errors.h"

namespace sni {

namespace {

using json = nlohmann::json;

/// A JSON value with its path in the document, for diagnostics.
class Node {
   public:
    Node(const json &j, std::string path) : j_(j), path_(std::move(path)) {}

    const json &value() const {
        return j_;
    }
    const std::string &path() const {
        return path_;
    }
    [[noreturn]] void fail(const std::string &msg) const {
        throw ConfigError(path_ + ": " + msg);
    }

    bool has(const std::string &key) const {
        return j_.is_object() && j_.contains(key);
    }
    Node at(const std::string &key) const {
        if (!has(key)) {
            fail("missing field '" + key + "'");
        }
        return Node(j_.at(key), path_ + "." + key);
    }
    std::vector<Node> items() const {
        if (!j_.is_array()) {
            fail("expected an array");
        }
        std::vector<Node> out;
        for (size_t i = 0; i < j_.size(); i++) {
            out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
        }
        return out;
    }
    void object() const {
        if (!j_.is_object()) {
            fail("expected an object");
        }
    }
    void only(std::initializer_list<const char *> keys) const {
        if (!j_.is_object()) {
            fail("expected an object");
        }
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto &[k, v] : j_.items()) {
            if (!allowed.count(k)) {
                fail("unknown field '" + k + "'");
            }
        }
    }

    std::string str() const {
        if (!j_.is_string()) {
            fail("expected a string");
        }
        return j_.get<std::string>();
    }
    double num() const {
        if (!j_.is_number()) {
            fail("expected a number");
        }
        return j_.get<double>();
    }
    bool boolean() const {
        if (!j_.is_boolean()) {
            fail("expected true or false");
        }
        return j_.get<bool>();
    }
    uint64_t count() const {
        double v = num();
        if (!(v >= 0) || v != std::floor(v) || v > 1.8e19) {
            fail("expected a nonnegative integer");
        }
        return j_.is_number_unsigned() ? j_.get<uint64_t>() : uint64_t(v);
    }
    /// A rate expression in p: a string such as "p/3" or a plain number.
    std::string expr() const {
        if (j_.is_number()) {
            std::ostringstream s;
            s.precision(17);
            s << j_.get<double>();
            return s.str();
        }
        std::string e = str();
        try {
            eval_param(e, 0.001);
        } catch (const ConfigError &err) {
            fail(err.what());
        }
        return e;
    }

   private:
    const json &j_;
    std::string path_;
};

Letter parse_letter(const Node &n) {
    std::string s = n.str();
    if (s == "X") {
        return Letter::X;
    }
    if (s == "Y") {
        return Letter::Y;
    }
    if (s == "Z") {
        return Letter::Z;
    }
    n.fail("expected one of X, Y, Z");
}

std::vector<size_t> parse_qubits(const Node &n, size_t qubit_count) {
    std::vector<size_t> out;
    for (const Node &q : n.items()) {
        uint64_t v = q.count();
        if (v >= qubit_count) {
            q.fail("qubit " + std::to_string(v) + " outside the " + std::to_string(qubit_count) + "-qubit register");
        }
        out.push_back(size_t(v));
    }
    return out;
}

size_t parse_qubit(const Node &n, size_t qubit_count) {
    uint64_t v = n.count();
    if (v >= qubit_count) {
        n.fail("qubit " + std::to_string(v) + " outside the " + std::to_string(qubit_count) + "-qubit register");
    }
    return size_t(v);
}

struct CircuitParser {
    RandomizedDynamicCircuit &circuit;
    bool twirl;

    /// Builds one operation (no repeat blocks).
    Operation operation(const Node &n) const {
        size_t qc = circuit.qubit_count();
        try {
            if (n.has("gate")) {
                n.only({"gate", "qubits", "twirl", "when"});
                return make_gate(n.at("gate").str(), parse_qubits(n.at("qubits"), qc));
            }
            if (n.has("pauli")) {
                n.only({"pauli", "qubits", "twirl", "when"});
                return make_pauli(PauliString::from_text(n.at("pauli").str()), parse_qubits(n.at("qubits"), qc));
            }
            if (n.has("prepare")) {
                n.only({"prepare", "qubit", "twirl", "when"});
                return make_prepare(n.at("prepare").str(), parse_qubit(n.at("qubit"), qc));
            }
            if (n.has("measure")) {
                n.only({"measure", "qubit", "label", "twirl", "when"});
                std::string label = n.has("label") ? n.at("label").str() : "";
                return make_measure(n.at("measure").str(), parse_qubit(n.at("qubit"), qc), label);
            }
            if (n.has("layer")) {
                n.only({"layer", "tag", "twirl", "when"});
                std::vector<Operation> parts;
                for (const Node &p : n.at("layer").items()) {
                    if (p.has("repeat") || p.has("layer")) {
                        p.fail("layers hold primitive operations only");
                    }
                    parts.push_back(operation(p));
                }
                return make_layer(parts, n.has("tag") ? n.at("tag").str() : "");
            }
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            n.fail(e.what());
        }
        n.fail("expected one of gate, pauli, prepare, measure, layer, repeat");
    }

    std::optional<Condition> condition(const Node &n) const {
        if (!n.has("when")) {
            return std::nullopt;
        }
        Node w = n.at("when");
        w.only({"lambda", "outcomes"});
        Condition c;
        if (w.has("lambda")) {
            for (const Node &l : w.at("lambda").items()) {
                c.lambdas.push_back(int(l.count()));
            }
        }
        if (w.has("outcomes")) {
            Node o = w.at("outcomes");
            o.object();
            for (const auto &[label, v] : o.value().items()) {
                Node value(v, o.path() + "." + label);
                double s = value.num();
                if (s != 1 && s != -1) {
                    value.fail("expected +1 or -1");
                }
                size_t index;
                try {
                    index = circuit.outcome_index(label);
                } catch (const std::exception &) {
                    value.fail("unknown outcome label '" + label + "'");
                }
                c.outcomes.push_back({index, int(s)});
            }
        }
        return c;
    }

    void append(const Node &n) {
        if (n.has("repeat")) {
            n.only({"repeat", "body"});
            uint64_t times = n.at("repeat").count();
            std::vector<Node> body = n.at("body").items();
            for (uint64_t t = 0; t < times; t++) {
                for (const Node &b : body) {
                    append(b);
                }
            }
            return;
        }
        Operation op = operation(n);
        bool tw = n.has("twirl") ? n.at("twirl").boolean() : twirl;
        std::optional<Condition> when = condition(n);
        try {
            circuit.append(std::move(op), tw, when);
        } catch (const ConfigError &) {
            throw;
        } catch (const std::exception &e) {
            n.fail(e.what());
        }
    }
};

void parse_circuit(const Node &n, ExperimentConfig &cfg) {
    if (n.has("preset")) {
        n.only({"preset", "steps"});
        std::string preset = n.at("preset").str();
        CircuitWithObservable cw;
        if (preset == "trotter") {
            cw = trotter_circuit(n.has("steps") ? size_t(n.at("steps").count()) : 8);
        } else if (preset == "spatial") {
            if (n.has("steps")) {
                n.at("steps").fail("the spatial preset has no steps");
            }
            cw = spatial_circuit();
        } else {
            n.at("preset").fail("unknown circuit preset '" + preset + "'");
        }
        cfg.circuit = std::move(cw.circuit);
        cfg.observable = std::move(cw.observable);
        return;
    }
    n.only({"qubits", "twirl", "ops", "observable", "lambda_weights", "declared_max_counts"});
    uint64_t qubits = n.at("qubits").count();
    if (qubits == 0 || qubits > PauliString::kMaxQubits) {
        n.at("qubits").fail("expected between 1 and 32 qubits");
    }
    cfg.circuit = RandomizedDynamicCircuit(size_t(qubits));
    cfg.twirl = n.has("twirl") ? n.at("twirl").boolean() : true;
    if (n.has("lambda_weights")) {
        std::vector<double> w;
        for (const Node &x : n.at("lambda_weights").items()) {
            w.push_back(x.num());
        }
        try {
            cfg.circuit.set_lambda_weights(w);
        } catch (const std::exception &e) {
            n.at("lambda_weights").fail(e.what());
        }
    }
    CircuitParser parser{cfg.circuit, cfg.twirl};
    for (const Node &op : n.at("ops").items()) {
        parser.append(op);
    }
    if (n.has("declared_max_counts")) {
        Node d = n.at("declared_max_counts");
        d.object();
        for (const auto &[kind, v] : d.value().items()) {
            cfg.circuit.declare_max_count(kind, size_t(Node(v, d.path() + "." + kind).count()));
        }
    }
    Node obs = n.at("observable");
    if (obs.has("product")) {
        obs.only({"product", "coefficient"});
        std::vector<std::string> labels;
        for (const Node &l : obs.at("product").items()) {
            labels.push_back(l.str());
        }
        double c = obs.has("coefficient") ? obs.at("coefficient").num() : 1.0;
        try {
            cfg.observable = product_observable(cfg.circuit, labels, c);
        } catch (const std::exception &e) {
            obs.fail(e.what());
        }
    } else if (obs.has("pauli_sum")) {
        obs.only({"pauli_sum"});
        std::vector<PauliTerm> terms;
        for (const Node &t : obs.at("pauli_sum").items()) {
            t.only({"coefficient", "pauli"});
            PauliString p;
            try {
                p = PauliString::from_text(t.at("pauli").str());
            } catch (const std::exception &e) {
                t.at("pauli").fail(e.what());
            }
            if (p.size() != qubits) {
                t.at("pauli").fail("expected a string of " + std::to_string(qubits) + " letters");
            }
            terms.push_back(PauliTerm{t.has("coefficient") ? t.at("coefficient").num() : 1.0, p});
        }
        cfg.observable = append_pauli_sum_measurement(cfg.circuit, terms);
    } else {
        obs.fail("expected 'product' or 'pauli_sum'");
    }
}

NoiseTerm parse_term(const Node &n) {
    std::string kind = n.at("kind").str();
    NoiseTerm t;
    if (kind == "depolarizing") {
        n.only({"kind", "p"});
        t.type = NoiseTermType::Depolarizing;
        t.rate = n.at("p").expr();
    } else if (kind == "coherent") {
        n.only({"kind", "axis", "theta"});
        t.type = NoiseTermType::Coherent;
        t.axis = n.has("axis") ? parse_letter(n.at("axis")) : Letter::Z;
        t.angle = n.at("theta").expr();
    } else if (kind == "pauli") {
        n.only({"kind", "terms"});
        t.type = NoiseTermType::Pauli;
        Node terms = n.at("terms");
        terms.object();
        for (const auto &[text, v] : terms.value().items()) {
            Node rate(v, terms.path() + "." + text);
            try {
                PauliString::from_text(text);
            } catch (const std::exception &e) {
                rate.fail(e.what());
            }
            t.paulis.push_back({text, rate.expr()});
        }
    } else {
        n.at("kind").fail("unknown noise kind '" + kind + "'");
    }
    return t;
}

NoiseRule parse_rule(const Node &n) {
    NoiseRule r;
    if (n.value().is_object()) {
        n.only({"terms", "global"});
        r.global = n.has("global") ? n.at("global").boolean() : false;
        for (const Node &t : n.at("terms").items()) {
            r.terms.push_back(parse_term(t));
        }
        return r;
    }
    for (const Node &t : n.items()) {
        r.terms.push_back(parse_term(t));
    }
    return r;
}

void parse_noise(const Node &n, ExperimentConfig &cfg) {
    std::vector<double> keep_values = cfg.noise.p_values, keep_weights = cfg.noise.p_weights;
    if (n.has("preset")) {
        n.only({"preset"});
        std::string preset = n.at("preset").str();
        if (preset == "trotter") {
            cfg.noise = trotter_noise({0.0});
        } else if (preset == "spatial") {
            cfg.noise = spatial_noise(0.0);
        } else {
            n.at("preset").fail("unknown noise preset '" + preset + "'");
        }
    } else {
        n.only({"rules", "encode", "decode", "scope"});
        cfg.noise = NoiseSpec{};
        Node rules = n.at("rules");
        rules.object();
        for (const auto &[tag, v] : rules.value().items()) {
            cfg.noise.rules[tag] = parse_rule(Node(v, rules.path() + "." + tag));
        }
        if (n.has("encode")) {
            cfg.noise.encode_rate = n.at("encode").expr();
        }
        if (n.has("decode")) {
            cfg.noise.decode_rate = n.at("decode").expr();
        }
        if (n.has("scope")) {
            std::string s = n.at("scope").str();
            if (s == "per_qubit") {
                cfg.noise.endecode_scope = EncodeDecodeScope::PerQubit;
            } else if (s == "block") {
                cfg.noise.endecode_scope = EncodeDecodeScope::Block;
            } else {
                n.at("scope").fail("expected 'per_qubit' or 'block'");
            }
        }
    }
    cfg.noise.p_values = keep_values;
    cfg.noise.p_weights = keep_weights;
}

void parse_fluctuation(const Node &n, ExperimentConfig &cfg) {
    n.only({"parameter", "values", "weights"});
    if (n.has("parameter") && n.at("parameter").str() != "p") {
        n.at("parameter").fail("only the noise parameter 'p' can fluctuate");
    }
    std::vector<double> values, weights;
    for (const Node &v : n.at("values").items()) {
        values.push_back(v.num());
    }
    if (values.empty()) {
        n.at("values").fail("expected at least one value");
    }
    if (n.has("weights")) {
        for (const Node &w : n.at("weights").items()) {
            if (w.num() < 0) {
                w.fail("weights must be nonnegative");
            }
            weights.push_back(w.num());
        }
        if (weights.size() != values.size()) {
            n.at("weights").fail("expected one weight per value");
        }
    } else {
        weights.assign(values.size(), 1.0);
    }
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0)) {
        n.at("weights").fail("weights must not all vanish");
    }
    for (double &w : weights) {
        w /= total;
    }
    cfg.noise.p_values = values;
    cfg.noise.p_weights = weights;
}

}  // namespace

ExperimentConfig parse_config(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        size_t line = 1, column = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); i++) {
            if (text[i] == '\n') {
                line++;
                column = 1;
            } else {
                column++;
            }
        }
        throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
    }
    Node root(doc, "config");
    root.only({"experiment", "circuit", "noise", "p", "fluctuation", "sampler", "M", "M_P", "M_P_grid",
               "repetitions", "seed", "pool_shots", "q_boost", "P_hat"});
    ExperimentConfig cfg;
    if (root.has("experiment")) {
        cfg.experiment = root.at("experiment").str();
    }
    if (root.has("p") && root.has("fluctuation")) {
        root.fail("give either 'p' or 'fluctuation', not both");
    }
    if (root.has("p")) {
        cfg.noise.p_values = {root.at("p").num()};
        cfg.noise.p_weights = {1.0};
    } else if (root.has("fluctuation")) {
        parse_fluctuation(root.at("fluctuation"), cfg);
    }
    for (double p : cfg.noise.p_values) {
        if (!(p >= 0 && p <= 1)) {
            root.fail("noise parameter " + std::to_string(p) + " outside [0, 1]");
        }
    }
    parse_circuit(root.at("circuit"), cfg);
    parse_noise(root.at("noise"), cfg);
    if (root.has("sampler")) {
        std::string s = root.at("sampler").str();
        if (s == "practical") {
            cfg.sampler = SamplerChoice::Practical;
        } else if (s == "ideal") {
            cfg.sampler = SamplerChoice::Ideal;
        } else {
            root.at("sampler").fail("expected 'practical' or 'ideal'");
        }
    }
    if (root.has("M")) {
        cfg.M = root.at("M").count();
    }
    if (root.has("M_P")) {
        cfg.M_P = root.at("M_P").count();
    }
    if (root.has("M_P_grid")) {
        for (const Node &m : root.at("M_P_grid").items()) {
            cfg.M_P_grid.push_back(m.count());
            if (cfg.M_P_grid.back() == 0) {
                m.fail("M_P must be positive");
            }
        }
    }
    if (root.has("repetitions")) {
        cfg.repetitions = size_t(root.at("repetitions").count());
    }
    if (root.has("seed")) {
        cfg.seed = root.at("seed").count();
    }
    if (root.has("pool_shots")) {
        cfg.pool_shots = root.at("pool_shots").count();
    }
    if (root.has("q_boost")) {
        cfg.q_boost = root.at("q_boost").num();
        if (!(cfg.q_boost >= 0 && cfg.q_boost < 1)) {
            root.at("q_boost").fail("expected a value in [0, 1)");
        }
    }
    if (root.has("P_hat")) {
        cfg.P_hat = root.at("P_hat").num();
    }
    // Every rule tag used by the circuit must resolve.
    try {
        CompiledCircuit cc(cfg.circuit);
        NoiseModel model(cfg.noise, cc.qubit_count());
        for (const auto &k : cc.kinds()) {
            model.native(k.representative, 0);
        }
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("config.noise: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::stringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

}  // namespace sni
