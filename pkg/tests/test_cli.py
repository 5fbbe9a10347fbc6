import json
import re
import subprocess
import sys

import pytest

from qsobolev import cli
from qsobolev.linalg import JacobiConvergenceError


def run_cli(args, cwd, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "qsobolev", *args],
        cwd=cwd,
        env=full_env,
        capture_output=True,
        text=True,
    )


def strip_timestamp(text: str) -> str:
    return re.sub(r'"timestamp": "[^"]*"', '"timestamp": "X"', text)


class TestSubcommands:
    def test_exponents_prints_and_passes(self, tmp_path):
        proc = run_cli(["exponents", "--alpha", "4", "--q", "4", "--s", "1"], tmp_path)
        assert proc.returncode == 0
        assert "sigma = 2.0" in proc.stdout
        report = json.loads((tmp_path / "exponents_report.json").read_text())
        assert report["passed"] is True
        assert report["results"]["beta_alternate"] == pytest.approx(16.0 / 11.0)
        assert report["results"]["holder_identity_error"] <= 1e-15

    def test_axioms_passes_with_informational_failure(self, tmp_path):
        proc = run_cli(["axioms", "--N", "4", "--convention", "standard"], tmp_path)
        assert proc.returncode == 0
        report = json.loads((tmp_path / "axioms_report.json").read_text())
        checks = {c["axiom"]: c for c in report["results"]["checks"]}
        assert not checks["inverse_conjugation"]["passed"]
        assert checks["inverse_conjugation"]["informational"]
        assert checks["composition"]["passed"]
        assert report["passed"] is True

    def test_plancherel(self, tmp_path):
        proc = run_cli(
            ["plancherel", "--N", "4", "--trials", "20", "--seed", "42"], tmp_path
        )
        assert proc.returncode == 0
        report = json.loads((tmp_path / "plancherel_report.json").read_text())
        assert report["results"]["worst_relative_deviation"] <= 1e-11

    def test_hausdorff_young_fraction_exponents(self, tmp_path):
        proc = run_cli(
            ["hausdorff-young", "--N", "4", "--p", "1,8/7,2", "--trials", "10", "--seed", "1"],
            tmp_path,
        )
        assert proc.returncode == 0
        report = json.loads((tmp_path / "hausdorff_young_report.json").read_text())
        ps = {round(run["p"], 6) for run in report["results"]["runs"]}
        assert ps == {1.0, round(8.0 / 7.0, 6), 2.0}
        assert len(report["results"]["runs"]) == 6  # three exponents, two directions

    def test_sobolev_norms(self, tmp_path):
        proc = run_cli(
            ["sobolev-norms", "--N", "4", "--trials", "20", "--seed", "0"], tmp_path
        )
        assert proc.returncode == 0

    def test_pairing(self, tmp_path):
        proc = run_cli(["pairing", "--N", "4", "--trials", "20"], tmp_path)
        assert proc.returncode == 0
        report = json.loads((tmp_path / "pairing_report.json").read_text())
        assert len(report["results"]["pairing"]) == 2  # both signs
        assert all(nd["full_rank"] for nd in report["results"]["nondegeneracy"])

    def test_embed(self, tmp_path):
        proc = run_cli(["embed", "--N", "4", "--trials", "20", "--p", "4/3"], tmp_path)
        assert proc.returncode == 0
        report = json.loads((tmp_path / "embed_report.json").read_text())
        assert report["results"]["link1_violations"] == 0

    def test_counterexample_csv_rows(self, tmp_path):
        proc = run_cli(
            [
                "counterexample",
                "--N",
                "8,8,16",
                "--sizes",
                "4,1,1",
                "--format",
                "both",
            ],
            tmp_path,
        )
        assert proc.returncode == 0
        csv_text = (tmp_path / "counterexample_report.csv").read_text()
        lines = csv_text.strip().splitlines()
        assert lines[0] == "N,set_size,epsilon,generator_lq_norm,schatten_norm"
        assert len(lines) == 4


class TestConfigHandling:
    def test_config_file_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("N = 4\ntrials = 10\nseed = 7  # fixed seed\n")
        proc = run_cli(
            ["plancherel", "--config", str(cfg), "--trials", "15"], tmp_path
        )
        assert proc.returncode == 0
        report = json.loads((tmp_path / "plancherel_report.json").read_text())
        assert report["config"]["N"] == "4"
        assert report["config"]["trials"] == 15  # flag wins
        assert report["config"]["seed"] == "7"

    def test_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("banana = 3\n")
        proc = run_cli(["plancherel", "--config", str(cfg)], tmp_path)
        assert proc.returncode == 2

    def test_invalid_parameter_exits_2(self, tmp_path):
        proc = run_cli(["pairing", "--N", "4", "--p", "2"], tmp_path)
        assert proc.returncode == 2
        assert "invalid configuration" in proc.stderr

    def test_precondition_failure_exits_2(self, tmp_path):
        proc = run_cli(["embed", "--N", "4", "--alpha", "1e9"], tmp_path)
        assert proc.returncode == 2
        assert "sigma" in proc.stderr

    def test_unknown_tolerance_exits_2(self, tmp_path):
        proc = run_cli(["plancherel", "--N", "4", "--tol", "bogus=1"], tmp_path)
        assert proc.returncode == 2

    def test_unknown_command_exits_2(self, tmp_path):
        proc = run_cli(["frobnicate"], tmp_path)
        assert proc.returncode == 2

    def test_output_dir_env(self, tmp_path):
        outdir = tmp_path / "reports"
        proc = run_cli(
            ["exponents"],
            tmp_path,
            env={"QSOBOLEV_OUTPUT_DIR": str(outdir)},
        )
        assert proc.returncode == 0
        assert (outdir / "exponents_report.json").exists()

    def test_explicit_out_path(self, tmp_path):
        target = tmp_path / "custom" / "run.json"
        proc = run_cli(["exponents", "--out", str(target)], tmp_path)
        assert proc.returncode == 0
        assert target.exists()


class TestExitCodes:
    def test_assertion_failure_exits_1_with_report(self, tmp_path):
        proc = run_cli(
            ["plancherel", "--N", "4", "--trials", "5", "--tol", "deviation=0"],
            tmp_path,
        )
        assert proc.returncode == 1
        report = json.loads((tmp_path / "plancherel_report.json").read_text())
        assert report["passed"] is False

    def test_kernel_failure_exits_3(self, monkeypatch, tmp_path, capsys):
        def explode(*args, **kwargs):
            raise JacobiConvergenceError("synthetic non-convergence")

        import qsobolev.linalg

        monkeypatch.setattr(qsobolev.linalg, "singular_values", explode)
        monkeypatch.chdir(tmp_path)
        rc = cli.main(["plancherel", "--N", "4", "--trials", "3"])
        assert rc == 3
        assert "kernel" in capsys.readouterr().err


class TestReproducibility:
    def test_json_byte_identical_modulo_timestamp(self, tmp_path):
        args = ["plancherel", "--N", "4", "--trials", "20", "--seed", "9", "--format", "both"]
        run_cli(args, tmp_path)
        first_json = (tmp_path / "plancherel_report.json").read_bytes()
        first_csv = (tmp_path / "plancherel_report.csv").read_bytes()
        run_cli(args, tmp_path)
        second_json = (tmp_path / "plancherel_report.json").read_bytes()
        second_csv = (tmp_path / "plancherel_report.csv").read_bytes()
        assert first_json != second_json  # the timestamp moved
        assert strip_timestamp(first_json.decode()) == strip_timestamp(second_json.decode())
        assert first_csv == second_csv

    def test_seed_changes_results(self, tmp_path):
        run_cli(["hausdorff-young", "--N", "4", "--p", "4/3", "--trials", "5", "--seed", "1", "--out", str(tmp_path / "a.json")], tmp_path)
        run_cli(["hausdorff-young", "--N", "4", "--p", "4/3", "--trials", "5", "--seed", "2", "--out", str(tmp_path / "b.json")], tmp_path)
        a = json.loads((tmp_path / "a.json").read_text())
        b = json.loads((tmp_path / "b.json").read_text())
        ra = [r["worst_ratio"] for r in a["results"]["runs"]]
        rb = [r["worst_ratio"] for r in b["results"]["runs"]]
        assert ra != rb
