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

// Python module sni_sim._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sni/analytics.h"
#include "sni/engine.h"
#include "sni/errors.h"
#include "sni/experiments.h"

namespace py = pybind11;

namespace {

py::object from_json(const nlohmann::ordered_json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::dict row_dict(const sni::ResultRow &r) {
    py::dict d;
    d["experiment"] = r.experiment;
    d["rep"] = r.rep;
    d["M_P"] = r.M_P;
    d["M"] = r.M;
    d["P_hat"] = r.P_hat;
    d["gamma"] = r.gamma;
    d["estimate"] = r.estimate;
    d["ideal"] = r.ideal;
    d["bias"] = r.bias;
    d["M_es"] = r.M_es;
    d["seed"] = r.seed;
    return d;
}

py::dict mitigation_dict(const sni::MitigationResult &r, double ideal) {
    py::dict d;
    d["estimate"] = r.estimate;
    d["standard_error"] = r.standard_error;
    d["gamma"] = r.gamma;
    d["ideal"] = ideal;
    d["P_hat"] = r.rate.P_hat;
    d["M_P"] = r.rate.M_P;
    d["M"] = r.shots;
    d["M_es"] = r.M_es;
    py::dict hist;
    for (const auto &[k, n] : r.k_histogram) {
        hist[py::int_(k)] = n;
    }
    d["k_histogram"] = hist;
    return d;
}

sni::RunOptions options(size_t threads) {
    sni::RunOptions o;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spacetime noise inversion simulator";

    py::register_exception<sni::ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
    py::register_exception<sni::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<sni::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<sni::EstimationError>(m, "EstimationError", PyExc_RuntimeError);

    py::class_<sni::ExperimentConfig>(m, "Config")
        .def_readwrite("experiment", &sni::ExperimentConfig::experiment)
        .def_readwrite("M", &sni::ExperimentConfig::M)
        .def_readwrite("M_P", &sni::ExperimentConfig::M_P)
        .def_readwrite("M_P_grid", &sni::ExperimentConfig::M_P_grid)
        .def_readwrite("repetitions", &sni::ExperimentConfig::repetitions)
        .def_readwrite("seed", &sni::ExperimentConfig::seed)
        .def_readwrite("pool_shots", &sni::ExperimentConfig::pool_shots)
        .def_readwrite("q_boost", &sni::ExperimentConfig::q_boost)
        .def_readwrite("P_hat", &sni::ExperimentConfig::P_hat)
        .def_property_readonly("p_values", [](const sni::ExperimentConfig &c) { return c.noise.p_values; })
        .def_property_readonly("p_weights", [](const sni::ExperimentConfig &c) { return c.noise.p_weights; })
        .def_property_readonly("sampler", [](const sni::ExperimentConfig &c) {
            return c.sampler == sni::SamplerChoice::Ideal ? "ideal" : "practical";
        })
        .def("__repr__", [](const sni::ExperimentConfig &c) {
            return "<Config experiment='" + c.experiment + "' M=" + std::to_string(c.M) +
                   " M_P=" + std::to_string(c.M_P) + " seed=" + std::to_string(c.seed) + ">";
        });

    m.def("load_config", &sni::load_config, py::arg("path"), "Loads and validates a JSON config file.");
    m.def("parse_config", &sni::parse_config, py::arg("text"), "Parses and validates JSON config text.");

    m.def(
        "ideal_value",
        [](const sni::ExperimentConfig &cfg) { return sni::ideal_expectation(cfg.circuit, cfg.observable); },
        py::arg("config"), "Noiseless expectation of the observable.");
    m.def(
        "total_error_rate", [](const sni::ExperimentConfig &cfg) { return sni::Workspace(cfg).P; },
        py::arg("config"), py::call_guard<py::gil_scoped_release>(), "Exact total error rate of the sampler.");

    m.def(
        "estimate_rate",
        [](const sni::ExperimentConfig &cfg, size_t threads) {
            sni::RateEstimate r;
            {
                py::gil_scoped_release release;
                r = sni::run_estimate_rate(cfg, options(threads));
            }
            py::dict d;
            d["P_hat"] = r.P_hat;
            d["M_P"] = r.M_P;
            d["M_error"] = r.M_error;
            return d;
        },
        py::arg("config"), py::arg("threads") = 0, "Estimates the total error rate from M_P spacetime instances.");
    m.def(
        "mitigate",
        [](const sni::ExperimentConfig &cfg, size_t threads) {
            sni::MitigationResult r;
            double ideal;
            {
                py::gil_scoped_release release;
                sni::Workspace ws(cfg);
                r = sni::run_mitigation(ws, cfg, options(threads));
                ideal = ws.ideal;
            }
            return mitigation_dict(r, ideal);
        },
        py::arg("config"), py::arg("threads") = 0, "Rate estimation followed by the mitigated estimator.");
    m.def(
        "cpec",
        [](const sni::ExperimentConfig &cfg, size_t threads) {
            sni::MitigationResult r;
            double ideal;
            {
                py::gil_scoped_release release;
                sni::Workspace ws(cfg);
                r = sni::run_conventional_pec(ws, cfg, options(threads));
                ideal = ws.ideal;
            }
            return mitigation_dict(r, ideal);
        },
        py::arg("config"), py::arg("threads") = 0, "Conventional PEC with a fitted sparse model.");
    m.def(
        "run_experiment",
        [](const std::string &name, const sni::ExperimentConfig &cfg, size_t threads) {
            sni::ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = sni::run_experiment(name, cfg, options(threads));
            }
            py::list rows;
            for (const auto &row : r.rows) {
                rows.append(row_dict(row));
            }
            py::dict d;
            d["name"] = r.name;
            d["rows"] = rows;
            d["summary"] = from_json(r.summary);
            d["csv"] = sni::csv_text(r);
            return d;
        },
        py::arg("name"), py::arg("config"), py::arg("threads") = 0,
        "Runs a study (fluctuating, spatial or cost-check); returns rows, summary and CSV text.");

    m.def(
        "order_pmf", [](double P_hat, size_t k) { return sni::OrderDistribution(P_hat).pmf(k); }, py::arg("P_hat"),
        py::arg("k"));
    m.def(
        "gamma", [](double P_hat) { return sni::OrderDistribution(P_hat).gamma(); }, py::arg("P_hat"));

    m.def("bias_bound", &sni::bias_bound, py::arg("P"), py::arg("P_hat"), py::arg("sup_norm") = 1.0);
    m.def("t_p", &sni::t_p, py::arg("delta"), py::arg("P"));
    m.def("min_M_P", &sni::min_M_P, py::arg("delta"), py::arg("f"), py::arg("P"));
    m.def("min_M", &sni::min_M, py::arg("delta"), py::arg("f"), py::arg("P"));
    m.def(
        "cost_moments",
        [](double M_P, double M, double P, double P_hat) {
            sni::CostMoments c = sni::cost_moments(M_P, M, P, P_hat);
            return py::make_tuple(c.mean, c.variance);
        },
        py::arg("M_P"), py::arg("M"), py::arg("P"), py::arg("P_hat"), "Returns (mean, variance) of M_es.");
    m.def("asymptotic_cost_ratio", &sni::asymptotic_cost_ratio, py::arg("P"));
    m.def(
        "pauli_superqubit_bias",
        [](double N, double eps_P, double eps_S, double P, double P_prime, double sup_norm) {
            sni::SuperqubitBias b =
                sni::pauli_superqubit_bias(N, sni::kDefaultPauliGates, sni::kDefaultPauliPerOperation,
                                           sni::kDefaultSuperqubitOps, eps_P, eps_S, P, P_prime, sup_norm);
            return py::make_tuple(b.sampler, b.circuit);
        },
        py::arg("N"), py::arg("eps_P"), py::arg("eps_S"), py::arg("P"), py::arg("P_prime"),
        py::arg("sup_norm") = 1.0, "Returns (sampler, circuit) bias bounds.");
    m.def("segmented_bias_bound", &sni::segmented_bias_bound, py::arg("P"), py::arg("dP"),
          py::arg("sup_norm") = 1.0);
    m.def("surface_overhead", &sni::surface_overhead, py::arg("d"), py::arg("d_S"));
}
