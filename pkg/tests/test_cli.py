"""Tests for the fquant command-line interface."""

import csv
import json
import math
import shlex

import pytest
from typer.testing import CliRunner

from fquant import __version__
from fquant.cli import app

runner = CliRunner()


def _rows(text: str) -> list[dict[str, str]]:
    lines = text.splitlines()
    assert lines[0].startswith("# fquant ")
    return list(csv.DictReader(lines[1:]))


class TestCodebookCommands:
    def test_build_two_levels(self, tmp_path):
        out = tmp_path / "cb.json"
        args = ["codebook", "build", "--N", "2", "--d", "1", "--out", str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["allocation"] == [2]
        assert data["distortion"] == pytest.approx(0.24199, abs=1e-4)
        assert data["version"] == __version__
        assert data["invocation"].startswith("fquant codebook build --N 2")

    def test_build_budget_one(self, tmp_path):
        out = tmp_path / "cb1.json"
        result = runner.invoke(app, ["codebook", "build", "--N", "1", "--out", str(out)])
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["allocation"] == []
        assert data["distortion"] == 0.5

    def test_show(self, tmp_path):
        out = tmp_path / "cb.json"
        runner.invoke(app, ["codebook", "build", "--N", "2", "--out", str(out)])
        result = runner.invoke(app, ["codebook", "show", str(out)])
        assert result.exit_code == 0, result.output
        assert "allocation=[2]" in result.output

    def test_recorded_invocation_replays(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["codebook", "build", "--N", "12", "--d", "2", "--out", str(first)]
        assert runner.invoke(app, args).exit_code == 0
        recorded = json.loads(first.read_text())["invocation"]
        assert recorded == f"fquant codebook build --N 12 --d 2 --T 1.0 --out {first}"
        replay = shlex.split(recorded)[1:-1] + [str(second)]
        result = runner.invoke(app, replay)
        assert result.exit_code == 0, result.output
        original, replayed = json.loads(first.read_text()), json.loads(second.read_text())
        assert replayed["allocation"] == original["allocation"]
        assert replayed["invocation"] == recorded.replace(str(first), str(second))

    def test_show_rejects_broken_weights(self, tmp_path):
        out = tmp_path / "cb.json"
        runner.invoke(app, ["codebook", "build", "--N", "2", "--out", str(out)])
        data = json.loads(out.read_text())
        data["scalar_quantizers"][-1]["weights"] = [0.9, 0.7]
        out.write_text(json.dumps(data))
        result = runner.invoke(app, ["codebook", "show", str(out)])
        assert result.exit_code == 2

    def test_malformed_size(self, tmp_path):
        out = tmp_path / "bad.json"
        result = runner.invoke(app, ["codebook", "build", "--N", "abc", "--out", str(out)])
        assert result.exit_code == 2
        assert not out.exists()

    def test_several_sizes_rejected(self):
        result = runner.invoke(app, ["codebook", "build", "--N", "2,4"])
        assert result.exit_code == 2

    def test_unknown_flag(self):
        result = runner.invoke(app, ["codebook", "build", "--bogus", "1"])
        assert result.exit_code == 2


class TestRateCommands:
    def test_quadratic_csv(self, tmp_path):
        out = tmp_path / "rate.csv"
        result = runner.invoke(
            app, ["rate", "quadratic", "--N", "10,100,1000,10000", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        text = out.read_text()
        assert text.startswith("# fquant rate quadratic --N 10,100,1000,10000")
        assert __version__ in text.splitlines()[0]
        rows = _rows(text)
        assert [int(r["N"]) for r in rows] == [10, 100, 1000, 10000]
        constants = [float(r["constant"]) for r in rows]
        assert all(0.40 <= c <= 0.60 for c in constants)
        errors = [float(r["error"]) for r in rows]
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_quadratic_json(self, tmp_path):
        out = tmp_path / "rate.json"
        result = runner.invoke(
            app, ["rate", "quadratic", "--N", "1,10", "--format", "json", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert [r["N"] for r in data["rows"]] == [1, 10]
        assert math.isnan(data["rows"][0]["constant"])

    def test_quadratic_to_stdout(self):
        result = runner.invoke(app, ["rate", "quadratic", "--N", "10"])
        assert result.exit_code == 0
        assert "N,size,error,constant,optimal_constant" in result.output

    def test_holder_needs_seed(self):
        result = runner.invoke(app, ["rate", "holder", "--N", "2", "--grid", "32", "--paths", "50"])
        assert result.exit_code == 2

    def test_holder_reproducible(self, tmp_path):
        args = ["rate", "holder", "--N", "2,8", "--grid", "32", "--paths", "50", "--seed", "1"]
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert runner.invoke(app, args + ["--out", str(first)]).exit_code == 0
        assert runner.invoke(app, args + ["--out", str(second)]).exit_code == 0
        # the header line names the output file
        assert first.read_text().splitlines()[1:] == second.read_text().splitlines()[1:]

    def test_holder_needs_enough_paths(self, tmp_path):
        out = tmp_path / "few.csv"
        args = ["rate", "holder", "--N", "4", "--paths", "3", "--grid", "32", "--seed", "1"]
        result = runner.invoke(app, args + ["--out", str(out)])
        assert result.exit_code == 2
        assert not out.exists()

    def test_bad_q(self):
        args = ["rate", "holder", "--N", "2", "--q", "2.0", "--seed", "1", "--grid", "16"]
        assert runner.invoke(app, args).exit_code == 2

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        args = ["rate", "quadratic", "--N", "10", "--out", str(blocker / "x.csv")]
        result = runner.invoke(app, args)
        assert result.exit_code == 4


class TestSdeCommands:
    def test_unknown_spec(self):
        result = runner.invoke(app, ["sde", "converge", "--spec", "nope", "--seed", "1"])
        assert result.exit_code == 2
        assert "gbm" in result.output

    def test_zero_diffusion_converges(self, tmp_path):
        out = tmp_path / "sde.csv"
        args = [
            "sde",
            "converge",
            "--spec",
            "zero-diffusion",
            "--N",
            "2,10",
            "--grid",
            "128",
            "--paths",
            "5",
            "--seed",
            "3",
            "--out",
            str(out),
        ]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        for row in _rows(out.read_text()):
            assert float(row["rho_median"]) < 1e-4

    def test_cubature_one(self, tmp_path):
        out = tmp_path / "one.json"
        args = ["cubature", "--functional", "one", "--N", "10", "--grid", "64", "--out", str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        data = json.loads(out.read_text())
        assert data["estimate"] == pytest.approx(1.0, abs=1e-10)
        assert data["spec"] == "gbm"

    def test_cubature_trivial_codebook(self, tmp_path):
        out = tmp_path / "c.json"
        result = runner.invoke(app, ["cubature", "--N", "1", "--grid", "32", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text())["estimate"] == 1.0

    def test_unknown_functional(self):
        result = runner.invoke(app, ["cubature", "--functional", "nope", "--N", "2"])
        assert result.exit_code == 2


def test_version():
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == __version__
