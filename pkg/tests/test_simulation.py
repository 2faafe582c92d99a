import csv
import io
import json

import numpy as np
import pytest

from uavnoma.beamforming import BeamformingSolution, achievable_rates
from uavnoma.cli import run
from uavnoma.errors import ConfigError, InfeasibleZF, InterferenceVerificationError
from uavnoma.simulation import SimConfig, rebuild, run_dof_experiment, run_rate_sweep, run_single

SMALL = dict(n_trials=3, power_dbm_min=13.0, power_dbm_max=33.0, power_dbm_step=10.0, n_restarts=8)


def test_defaults_follow_reported_setup():
    c = SimConfig()
    assert (c.uav_height_m, c.n_gbs, c.rician_factor, c.user_tx_power_dbm) == (100.0, 8, 3.0, 23.0)
    assert (c.bandwidth_hz, c.noise_psd_dbm_hz, c.antenna_count) == (10e6, -169.0, 6)
    assert c.power_grid() == [13.0, 18.0, 23.0, 28.0, 33.0, 38.0, 43.0]


@pytest.mark.parametrize("bad", [
    {"power_dbm_min": 50.0},
    {"power_dbm_step": 0.0},
    {"n_trials": 0},
    {"association_mode": "best"},
    {"rician_factor": -1.0},
    {"uav_height_m": 0.0},
    {"n_streams": 9},
])
def test_invalid_config(bad):
    with pytest.raises(ConfigError):
        SimConfig.from_dict(bad)


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="unknown config keys: colour"):
        SimConfig.from_dict({"colour": "red"})


def test_config_round_trip(tmp_path):
    c = SimConfig(n_trials=7, master_seed=99)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_dict()))
    assert SimConfig.load(path) == c


def test_dof_table():
    rows = run_dof_experiment(SimConfig())
    assert [r["dof_proposed"] for r in rows] == [1, 1, 1, 1, 2, 2, 4]
    assert [r["dof_upper_bound"] for r in rows] == list(range(1, 8))
    assert all(r["dof_lower_bound"] == 0 for r in rows)
    assert rows[-1]["group_sizes"] == "2;2;2;2"


def test_sweep_shape_and_determinism():
    config = SimConfig(**SMALL)
    a = run_rate_sweep(config)
    b = run_rate_sweep(config)
    assert a.to_csv() == b.to_csv()
    rows = list(csv.DictReader(io.StringIO(a.to_csv())))
    assert len(rows) == 3 * 2
    assert [r["association_mode"] for r in rows[:2]] == ["effective_sinr", "random"]
    assert a.rates["random"].shape == (3, 3, 2)
    first = rows[0]
    assert float(first["mean_sum_rate_mbps"]) == pytest.approx(float(first["mean_sum_rate_bps_hz"]) * 10)


def test_sweep_pool_matches_serial():
    config = SimConfig(**SMALL)
    assert run_rate_sweep(config, n_workers=2).to_csv() == run_rate_sweep(config).to_csv()


def test_sweep_single_mode_and_seed_change():
    config = SimConfig(**SMALL)
    only = run_rate_sweep(config, modes=["random"])
    assert only.modes == ("random",)
    both = run_rate_sweep(config)
    np.testing.assert_array_equal(only.rates["random"], both.rates["random"])
    other = run_rate_sweep(config.replace(master_seed=1), modes=["random"])
    assert not np.array_equal(other.rates["random"], only.rates["random"])


def test_sweep_aborts_on_interference():
    with pytest.raises(InterferenceVerificationError) as info:
        run_rate_sweep(SimConfig(**SMALL, zf_tol=1e-60))
    assert info.value.seed is not None


def test_infeasible_stream_override():
    with pytest.raises(InfeasibleZF):
        run_single(SimConfig(n_streams=8), 0, 30.0)


def test_single_record_round_trip_and_reevaluation():
    config = SimConfig(n_restarts=8)
    record = run_single(config, 5, 30.0)
    text = json.dumps(record, allow_nan=False)
    back = json.loads(text)
    assert back == record
    assert back["interference"]["passed"]
    config2, channels, profile, assoc = rebuild(back)
    assert config2 == config
    sol = BeamformingSolution.from_dict(back["solution"])
    np.testing.assert_allclose(achievable_rates(channels, profile, assoc, sol), back["rates"], rtol=1e-6)


def test_single_zero_power():
    record = run_single(SimConfig(n_restarts=4), 1, float("-inf"))
    assert record["rates"] == [0.0, 0.0]
    assert record["power_w"] == 0.0 and record["power_dbm"] is None


# ---------------------------------------------------------------- CLI


def _write(tmp_path, data):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_cli_dof(tmp_path):
    out = tmp_path / "dof.csv"
    assert run(["dof", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert [int(r["dof_proposed"]) for r in rows] == [1, 1, 1, 1, 2, 2, 4]
    assert list(rows[0]) == ["M", "dof_proposed", "dof_upper_bound", "dof_lower_bound", "group_sizes"]


def test_cli_sweep_is_reproducible(tmp_path):
    cfg = _write(tmp_path, {**SMALL, "n_trials": 1})
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["sweep", "--config", cfg, "--seed", "17", "--out", str(a)]) == 0
    assert run(["sweep", "--config", cfg, "--seed", "17", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 1 + 3 * 2


def test_cli_sweep_modes(tmp_path):
    cfg = _write(tmp_path, {**SMALL, "n_trials": 1})
    out = tmp_path / "s.csv"
    assert run(["sweep", "--config", cfg, "--modes", "random", "--out", str(out)]) == 0
    assert {r["association_mode"] for r in csv.DictReader(out.open())} == {"random"}
    assert run(["sweep", "--config", cfg, "--modes", "greedy"]) == 2


def test_cli_single(tmp_path):
    out = tmp_path / "r.json"
    cfg = _write(tmp_path, {"n_restarts": 4})
    assert run(["single", "--config", cfg, "--seed", "3", "--power-dbm", "20", "--out", str(out)]) == 0
    record = json.loads(out.read_text(encoding="utf-8"))
    assert record["channel_seed"] == 3 and record["interference"]["passed"]


def test_cli_exit_codes(tmp_path, capsys):
    assert run(["dof", "--config", _write(tmp_path, {"bogus": 1})]) == 2
    assert run(["dof", "--config", str(tmp_path / "missing.json")]) == 2
    assert run(["single", "--config", _write(tmp_path, {"n_streams": 8})]) == 3
    assert run(["dof", "--config", _write(tmp_path, {"n_gbs": 1})]) == 0
    assert run(["single", "--config", _write(tmp_path, {"n_gbs": 6, "antenna_count": 6})]) == 3
    assert run(["single", "--config", _write(tmp_path, {"zf_tol": 1e-60, "n_restarts": 2})]) == 4
    assert "interference" in capsys.readouterr().err
