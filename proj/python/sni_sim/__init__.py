# Copyright 2026 The SNI-Sim Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Spacetime noise inversion simulator."""

from sni_sim._core import (
    Config,
    ConfigError,
    DomainError,
    EstimationError,
    ProtocolError,
    asymptotic_cost_ratio,
    bias_bound,
    cost_moments,
    cpec,
    estimate_rate,
    gamma,
    ideal_value,
    load_config,
    min_M,
    min_M_P,
    mitigate,
    order_pmf,
    parse_config,
    pauli_superqubit_bias,
    run_experiment,
    segmented_bias_bound,
    surface_overhead,
    t_p,
    total_error_rate,
)

__all__ = [
    "Config",
    "ConfigError",
    "DomainError",
    "EstimationError",
    "ProtocolError",
    "asymptotic_cost_ratio",
    "bias_bound",
    "cost_moments",
    "cpec",
    "estimate_rate",
    "gamma",
    "ideal_value",
    "load_config",
    "min_M",
    "min_M_P",
    "mitigate",
    "order_pmf",
    "parse_config",
    "pauli_superqubit_bias",
    "run_experiment",
    "segmented_bias_bound",
    "surface_overhead",
    "t_p",
    "total_error_rate",
]
