import json
import math
import subprocess
import sys

import pytest

from udwharvest.cli import main


def run_cli(args):
    return main(list(args))


class TestCompute:
    def test_parallel_point_json(self, tmp_path, capsys):
        rc = run_cli(["compute", "--kappa", "0.001", "--sigma", "1",
                      "--omega", "1250", "--L", "1000",
                      "--scenario", "parallel"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["X_scaled"]["residue"] == {"re": 0.0, "im": 0.0}
        assert report["A_scaled"] == pytest.approx(4.4178e-8, rel=1e-3)
        assert report["criterion"]["entangled"] is True

    def test_necktie_point_has_residue(self, tmp_path, capsys):
        rc = run_cli(["compute", "--kappa", "1", "--sigma", "1", "--omega",
                      "2.6", "--L", "1.0", "--scenario", "antiparallel"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        res = report["X_scaled"]["residue"]
        assert res["re"] != 0.0 or res["im"] != 0.0

    def test_invalid_window_exits_2(self, capsys):
        rc = run_cli(["compute", "--kappa", "2", "--sigma", "1", "--omega",
                      "2", "--L", "1", "--scenario", "parallel"])
        assert rc == 2
        assert "pi" in capsys.readouterr().err

    def test_config_file_flat(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("kappa = 0.5\nsigma = 1.0\nomega = 1.2\nL = 2.0\n"
                       "scenario = thermal\n# comment\n")
        rc = run_cli(["compute", "--config", str(cfg)])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["config"]["scenario"] == "thermal"

    def test_config_file_json_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"kappa": 0.5, "sigma": 1.0, "omega": 1.2,
                                   "L": 2.0, "scenario": "thermal"}))
        rc = run_cli(["compute", "--config", str(cfg), "--L", "3.0"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["config"]["L"] == 3.0

    def test_missing_parameters_exit_2(self, capsys):
        rc = run_cli(["compute", "--kappa", "1.0"])
        assert rc == 2
        assert "missing" in capsys.readouterr().err


class TestScanCommand:
    def test_csv_and_manifest(self, tmp_path):
        out = tmp_path / "grid.csv"
        rc = run_cli(["scan", "--scenario", "parallel", "--na", "8", "--nw", "6",
                      "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "a,w,N_scaled,entangled,method,flags,log10_absX"
        assert len(lines) == 1 + 8 * 6
        manifest = json.loads((tmp_path / "grid.manifest.json").read_text())
        assert manifest["config"]["scenario"] == "parallel"
        assert "grid.csv" in manifest["outputs"]

    def test_byte_identical_reruns(self, tmp_path):
        outs = []
        for tag in ("one", "two"):
            out = tmp_path / f"{tag}.csv"
            rc = run_cli(["scan", "--scenario", "antiparallel", "--na", "6",
                          "--nw", "5", "--g", "0.001", "--seed", "7",
                          "--out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_plot_written(self, tmp_path):
        out = tmp_path / "grid.csv"
        rc = run_cli(["scan", "--scenario", "parallel", "--na", "6", "--nw", "5",
                      "--out", str(out), "--plot"])
        assert rc == 0
        assert (tmp_path / "grid.png").stat().st_size > 0


class TestOtherCommands:
    def test_resonance_csv(self, tmp_path):
        out = tmp_path / "res.csv"
        rc = run_cli(["resonance", "--kappa", "0.001", "--n", "11",
                      "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "w,a_crit,L_crit"
        assert len(lines) == 12

    def test_corridor_csv_and_manifest_interval(self, tmp_path):
        out = tmp_path / "corr.csv"
        rc = run_cli(["corridor", "--kappa", "0.01", "--sigma", "1",
                      "--omega", "125", "--n", "16", "--out", str(out),
                      "--plot"])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "deltaL,reX_scaled,imX_scaled"
        manifest = json.loads((tmp_path / "corr.manifest.json").read_text())
        assert manifest["method_flags"]["sign_change_interval"] is not None
        assert (tmp_path / "corr.png").stat().st_size > 0

    def test_rangefind_sudden_death_json(self, capsys):
        rc = run_cli(["rangefind", "--protocol", "sudden-death", "--kappa",
                      "0.001", "--sigma", "1", "--omega", "2600",
                      "--delta", "50"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["triggered"] is True

    def test_rangefind_gradient_roundtrip_json(self, capsys):
        rc = run_cli(["rangefind", "--protocol", "gradient", "--kappa", "0.4",
                      "--sigma", "1", "--omega", "6.5", "--L", "3.75",
                      "--synthetic-dl", "0.004"])
        assert rc == 0
        report = json.loads(capsys.readouterr().out)
        assert report["recovery_error"] < 0.1 * 0.004

    def test_rangefind_corridor_csv(self, tmp_path):
        out = tmp_path / "rf.csv"
        rc = run_cli(["rangefind", "--protocol", "corridor", "--kappa", "0.01",
                      "--sigma", "1", "--omega", "125", "--n-ens", "4",
                      "--n-shots", "20000", "--out", str(out), "--plot"])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("index,deltaL,estimate_4ReX")
        assert len(lines) == 5
        assert (tmp_path / "rf.png").stat().st_size > 0

    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "udwharvest.cli", "--version"],
            capture_output=True, text=True)
        assert proc.returncode == 0


class TestOracleCommand:
    def test_saddle_suite_passes(self, capsys):
        rc = run_cli(["oracle", "--suite", "saddle"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "PASS" in out
