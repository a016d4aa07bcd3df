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

import math
from pathlib import Path

import pytest

import sni_sim

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_analytics():
    assert sni_sim.t_p(0.1, 0.1) == pytest.approx(0.064 / 4.16, abs=1e-12)
    assert sni_sim.surface_overhead(1, 2) == pytest.approx(100 / 3)
    assert sni_sim.bias_bound(0.2, 0.25) == pytest.approx(1 / 3)
    mean, var = sni_sim.cost_moments(1e6, 1e6, 0.25, 0.25)
    assert mean == pytest.approx(3e6)
    assert var > 0
    assert sni_sim.asymptotic_cost_ratio(0.25) == pytest.approx(6.0)
    assert sni_sim.min_M_P(0.3, 0.1, 0.15) == 1668
    with pytest.raises(sni_sim.DomainError):
        sni_sim.t_p(0.1, 0.5)


def test_order_distribution():
    assert sni_sim.order_pmf(0.25, 0) == pytest.approx(2 / 3)
    assert sni_sim.gamma(0.25) == pytest.approx(2.0)
    with pytest.raises(sni_sim.ProtocolError):
        sni_sim.gamma(0.5)


def test_config_round_trip():
    cfg = sni_sim.load_config(str(CONFIGS / "cost_check.json"))
    assert cfg.experiment == "cost-check"
    assert cfg.sampler == "ideal"
    assert cfg.p_values == [0.2]
    cfg.M = 500
    cfg.P_hat = None
    assert cfg.M == 500 and cfg.P_hat is None
    with pytest.raises(sni_sim.ConfigError, match="unknown field 'bogus'"):
        sni_sim.parse_config('{"circuit": {"preset": "trotter"}, "noise": {"preset": "trotter"}, "bogus": 1}')


def test_mitigation_noiseless_demo():
    cfg = sni_sim.load_config(str(CONFIGS / "noiseless_demo.json"))
    r = sni_sim.mitigate(cfg)
    assert r["gamma"] == 1.0
    assert r["estimate"] == pytest.approx(r["ideal"], abs=1e-12)
    assert r["k_histogram"] == {0: cfg.M}


def test_mitigation_and_rate():
    cfg = sni_sim.load_config(str(CONFIGS / "cost_check.json"))
    cfg.P_hat = None
    cfg.M = 20000
    rate = sni_sim.estimate_rate(cfg)
    assert rate["M_P"] == cfg.M_P
    assert rate["P_hat"] == pytest.approx(0.2, abs=5 * math.sqrt(0.16 / cfg.M_P))
    r = sni_sim.mitigate(cfg)
    assert abs(r["estimate"] - r["ideal"]) < 5 * r["standard_error"] + 0.05
    assert r["M_es"] > cfg.M_P
    cfg.P_hat = 0.5
    with pytest.raises(sni_sim.ProtocolError):
        sni_sim.mitigate(cfg)


def test_experiment_rows_and_summary():
    cfg = sni_sim.load_config(str(CONFIGS / "cost_check.json"))
    cfg.repetitions = 5
    out = sni_sim.run_experiment("cost-check", cfg)
    assert len(out["rows"]) == 5
    for row in out["rows"]:
        assert row["bias"] == pytest.approx(row["estimate"] - row["ideal"])
    assert out["summary"]["predicted_mean"] > 0
    lines = out["csv"].splitlines()
    assert lines[0].startswith("# sni-sim")
    assert lines[1].split(",")[:3] == ["experiment", "rep", "M_P"]
    again = sni_sim.run_experiment("cost-check", cfg)
    assert again["rows"] == out["rows"]
    with pytest.raises(sni_sim.ConfigError):
        sni_sim.run_experiment("unknown", cfg)
