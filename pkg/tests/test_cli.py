"""Config parsing, report writers, and the command-line workflows."""

import json

import pytest

from pcflow import ConfigInvalid
from pcflow.cli import EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, main
from pcflow.config import config_hash, parse_config

SIM_CFG = {
    "initial_curve": {"ellipse": {"a": 1.3, "b": 1.0}},
    "p": 2.0,
    "n": 64,
    "horizon": {"t_end": 0.01},
    "monitor_every": 100,
}

VERIFY_CFG = {
    "initial_curve": {"ellipse": {"a": 1.3, "b": 1.0}},
    "p": 2.0,
    "n": 128,
}


def write_cfg(tmp_path, payload, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


class TestParseConfig:
    def test_minimal_config(self):
        cfg = parse_config('{"initial_curve": {"circle": {"R": 1.0}}, "p": 2.0}')
        assert cfg.n == 512
        assert cfg.sigma == 0.4
        assert cfg.seed == 0

    def test_not_json(self):
        with pytest.raises(ConfigInvalid):
            parse_config("p = 2")

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigInvalid, match="unknown config key"):
            parse_config('{"initial_curve": {"circle": {"R": 1}}, "p": 2, "pp": 3}')

    def test_missing_p(self):
        with pytest.raises(ConfigInvalid, match="p: required"):
            parse_config('{"initial_curve": {"circle": {"R": 1}}}')

    def test_p_range(self):
        with pytest.raises(ConfigInvalid, match="must exceed 1"):
            parse_config('{"initial_curve": {"circle": {"R": 1}}, "p": 1.0}')

    def test_n_power_of_two(self):
        with pytest.raises(ConfigInvalid, match="power of two"):
            parse_config('{"initial_curve": {"circle": {"R": 1}}, "p": 2, "n": 100}')

    def test_horizon_forms(self):
        base = '{"initial_curve": {"circle": {"R": 1}}, "p": 2, "horizon": %s}'
        assert parse_config(base % '{"t_end": 0.5}').horizon == {"t_end": 0.5}
        assert parse_config(base % '{"until": 0.8}').horizon == {"until": 0.8}
        with pytest.raises(ConfigInvalid):
            parse_config(base % '{"until": 0.95}')
        with pytest.raises(ConfigInvalid):
            parse_config(base % '{"stop": 1}')

    def test_sweep_requires_fields(self):
        with pytest.raises(ConfigInvalid, match="sweep.family"):
            parse_config('{"initial_curve": {"circle": {"R": 1}}, "p": 2,'
                         ' "sweep": {"p_values": [2], "grid": [1.1]}}')

    def test_hash_tracks_content(self):
        c1 = parse_config('{"initial_curve": {"circle": {"R": 1.0}}, "p": 2.0}')
        c2 = parse_config('{"initial_curve": {"circle": {"R": 1.0}}, "p": 3.0}')
        assert config_hash(c1) != config_hash(c2)
        assert config_hash(c1) == config_hash(c1)
        assert len(config_hash(c1)) == 16


class TestSimulate:
    def test_produces_expected_files(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        out = tmp_path / "out"
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == EXIT_OK
        assert (out / "timeseries.csv").exists()
        assert (out / "summary.json").exists()
        assert (out / "curve_0.csv").exists()
        assert (out / "curve_0.svg").exists()
        assert (out / "noncollapse_0.json").exists()
        summary = json.loads((out / "summary.json").read_text())
        assert summary["terminal_reason"] == "t_end"
        assert not summary["aborted"]
        assert summary["t_final"] == pytest.approx(0.01)

    def test_timeseries_columns(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        out = tmp_path / "out"
        main(["simulate", "--config", cfg, "--out", str(out)])
        lines = (out / "timeseries.csv").read_text().splitlines()
        assert lines[0].startswith("# config_hash=")
        assert lines[1] == "t,dt,area,length,isoperimetric,kappa_min,kappa_max,mu"
        assert len(lines) >= 4

    def test_svg_contains_curve_and_disc(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        out = tmp_path / "out"
        main(["simulate", "--config", cfg, "--out", str(out)])
        svg = (out / "curve_0.svg").read_text()
        assert "<path" in svg
        assert "<circle" in svg

    def test_nonconvex_initial_curve_is_config_error(self, tmp_path):
        payload = {"initial_curve": {"fourier": {"R": 1, "modes": [[2, 0.8, 0]]}},
                   "p": 2.0}
        cfg = write_cfg(tmp_path, payload)
        assert main(["simulate", "--config", cfg,
                     "--out", str(tmp_path / "o")]) == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        assert main(["simulate", "--config", str(tmp_path / "nope.json"),
                     "--out", str(tmp_path / "o")]) == EXIT_CONFIG

    def test_reruns_byte_identical(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        main(["simulate", "--config", cfg, "--out", str(out1)])
        main(["simulate", "--config", cfg, "--out", str(out2)])
        names = sorted(p.name for p in out1.iterdir())
        assert names == sorted(p.name for p in out2.iterdir())
        for name in names:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestNonCollapse:
    def test_report_with_oracle(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        out = tmp_path / "out"
        assert main(["noncollapse", "--config", cfg, "--out", str(out)]) == EXIT_OK
        rep = json.loads((out / "noncollapse.json").read_text())
        assert rep["mu"] > 1.0
        assert rep["delta_equiv"] == pytest.approx(1.0 / rep["mu"])
        assert all(e["r_oracle"] is not None for e in rep["per_point"])


class TestVerify:
    def test_passes_on_correct_flow(self, tmp_path):
        cfg = write_cfg(tmp_path, VERIFY_CFG)
        out = tmp_path / "out"
        assert main(["verify", "--config", cfg, "--out", str(out)]) == EXIT_OK
        rep = json.loads((out / "verify.json").read_text())
        assert rep["pass"]
        names = {r["name"] for r in rep["reports"]}
        assert names == {"kappa_evolution[kappa_p]", "kappa_evolution[kappa]",
                         "rewrite_equivalence", "trig_identity"}

    def test_sign_error_detected(self, tmp_path):
        cfg = write_cfg(tmp_path, VERIFY_CFG)
        out = tmp_path / "out"
        rc = main(["verify", "--config", cfg, "--out", str(out),
                   "--inject-sign-error"])
        assert rc == EXIT_VERIFY
        rep = json.loads((out / "verify.json").read_text())
        assert not rep["pass"]


class TestSweep:
    def test_sweep_csv(self, tmp_path):
        payload = {
            "initial_curve": {"circle": {"R": 1.0}},
            "p": 2.0,
            "sweep": {"p_values": [2.0], "family": "ellipse", "grid": [1.1],
                      "n": 64, "horizon_frac": 0.3},
        }
        cfg = write_cfg(tmp_path, payload)
        out = tmp_path / "out"
        assert main(["sweep-mu0", "--config", cfg, "--out", str(out)]) == EXIT_OK
        lines = (out / "mu0_sweep.csv").read_text().splitlines()
        assert "EMPIRICAL" in lines[1]
        assert lines[2] == "p,family,param,mu0_empirical,pass"
        assert len(lines) == 4

    def test_sweep_requires_section(self, tmp_path):
        cfg = write_cfg(tmp_path, SIM_CFG)
        assert main(["sweep-mu0", "--config", cfg,
                     "--out", str(tmp_path / "o")]) == EXIT_CONFIG
