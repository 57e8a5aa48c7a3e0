"""
命令行：输出格式、退出码与可复现性
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hilbert_cone.cli import run_command

REPO_ROOT = Path(__file__).resolve().parent.parent


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestGolden:
    def test_tau(self, capsys, golden_dir):
        code, out, _ = run(capsys, "tau", "[[2, 1], [1, 2]]")
        assert code == 0
        assert out == (golden_dir / "tau_2x2.json").read_text(encoding="utf-8")

    def test_dist_collinear(self, capsys, golden_dir):
        code, out, _ = run(capsys, "dist", "[1, 2]", "[2, 4]")
        assert code == 0
        assert out == (golden_dir / "dist_collinear.json").read_text(encoding="utf-8")

    @pytest.mark.parametrize(
        "argv, name",
        [
            (
                ["tau-kernel", '{"a_grid": [0, 1], "x_grid": [0, 1], "log_values": [[0, -1], [-1, 0]]}'],
                "tau_kernel.json",
            ),
            (["verify", "[[1, 1], [1, 1]]", "--trials", "100", "--seed", "7"], "verify_rank_one.json"),
            (["markov", "[[0.5, 0.5], [0.5, 0.5]]", "[1, 0]", "2"], "markov_rank_one.csv"),
            (["ball", "[1, 1, 1]", "0.6931471805599453"], "ball_uniform.json"),
            (["tile", "[1, 1, 1]", "0.6931471805599453", "0"], "tile_uniform.json"),
            (["bounds", "[1, 0]", "[1, 1]"], "bounds_boundary.json"),
        ],
        ids=["tau-kernel", "verify", "markov", "ball", "tile", "bounds"],
    )
    def test_command_output(self, capsys, assert_golden, argv, name):
        code, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert code == 0
        assert_golden(first, name)
        assert first == second

    def test_tile_svg(self, capsys, tmp_path, assert_golden):
        texts = []
        for attempt in range(2):
            svg = tmp_path / f"tiling_{attempt}.svg"
            code, _, _ = run(capsys, "tile", "[1, 1, 1]", "0.6931471805599453", "0", "--svg", str(svg))
            assert code == 0
            texts.append(svg.read_bytes())
        assert_golden(texts[0].decode("utf-8"), "tile_uniform.svg")
        assert texts[0] == texts[1]


class TestDist:
    def test_infinite_distance_is_a_string(self, capsys):
        code, out, _ = run(capsys, "dist", "[1, 0]", "[1, 1]")
        data = json.loads(out)
        assert code == 0
        assert data["hilbert"] == "inf"
        assert data["t"] == 1.0
        assert data["comparable"] is False
        assert data["kl"] == pytest.approx(0.6931471805599453)

    def test_reads_csv_files(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        a.write_text("1,1\n", encoding="utf-8")
        b.write_text("# weights\n2,1\n", encoding="utf-8")
        code, out, _ = run(capsys, "dist", str(a), str(b))
        assert code == 0
        assert json.loads(out)["hilbert"] == pytest.approx(0.6931471805599453)

    def test_negative_entry(self, capsys):
        code, out, err = run(capsys, "dist", "[1, -1]", "[1, 1]")
        assert code == 1
        assert out == ""
        assert "hilbert-cone dist: error: negative entry -1.0 at index 1" in err

    def test_dimension_mismatch(self, capsys):
        code, _, err = run(capsys, "dist", "[1, 1]", "[1, 1, 1]")
        assert code == 1
        assert "length mismatch" in err


class TestTau:
    def test_zero_entries_serialize_infinity(self, capsys):
        code, out, _ = run(capsys, "tau", "[[1, 0], [0, 1]]")
        assert code == 0
        assert json.loads(out) == {"phi": 0.0, "tau": 1.0, "diameter": "inf"}

    def test_kernel(self, capsys):
        grid = '{"a_grid": [0, 1], "x_grid": [0, 1], "log_values": [[0, 0], [0, 0]]}'
        code, out, _ = run(capsys, "tau-kernel", grid)
        assert code == 0
        assert json.loads(out) == {"phi": 1.0, "tau": 0.0}

    def test_wrong_document_kind(self, capsys):
        code, _, err = run(capsys, "tau", "[1, 2]")
        assert code == 1
        assert "expected a matrix document" in err


class TestVerify:
    def test_passes_and_is_deterministic(self, capsys):
        first = run(capsys, "verify", "[[2, 1], [1, 2]]", "--trials", "500", "--seed", "5")
        second = run(capsys, "verify", "[[2, 1], [1, 2]]", "--trials", "500", "--seed", "5")
        assert first[0] == 0
        assert first[1] == second[1]
        report = json.loads(first[1])
        assert report["passed"] is True
        assert report["trials"] == 500
        assert report["seed"] == 5

    def test_seed_from_environment(self, capsys, monkeypatch):
        _, explicit, _ = run(capsys, "verify", "[[3, 1], [1, 1]]", "--trials", "200", "--seed", "11")
        monkeypatch.setenv("HILBERT_CONE_SEED", "11")
        _, from_env, _ = run(capsys, "verify", "[[3, 1], [1, 1]]", "--trials", "200")
        assert explicit == from_env

    def test_invalid_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("HILBERT_CONE_SEED", "not-a-number")
        code, _, err = run(capsys, "verify", "[[2, 1], [1, 2]]", "--trials", "10")
        assert code == 2
        assert "invalid environment" in err

    def test_invalid_environment_seed_in_fresh_process(self):
        env = {**os.environ, "HILBERT_CONE_SEED": "not-a-number"}
        proc = subprocess.run(
            [sys.executable, "main.py", "tau", "[[2, 1], [1, 2]]"],
            cwd=REPO_ROOT,
            env=env,
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
        assert "invalid environment" in proc.stderr
        assert "Traceback" not in proc.stderr

    def test_negative_seed_is_a_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "[[2, 1], [1, 2]]", "--seed", "-1")
        assert code == 2

    def test_negative_tolerance_is_a_usage_error(self, capsys):
        code, _, _ = run(capsys, "--tolerance", "contraction=-1", "verify", "[[2, 1], [1, 2]]")
        assert code == 2


class TestMarkov:
    def test_csv_table(self, capsys):
        code, out, _ = run(capsys, "markov", "[[0.75, 0.25], [0.25, 0.75]]", "[1, 0]", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "step,H,T,TV,certified_bound"
        assert len(lines) == 5
        assert lines[1].startswith("0,inf,1.0,")
        assert out.endswith("\n")

    def test_warning_line(self, capsys):
        code, out, err = run(capsys, "markov", "[[0, 1], [1, 0]]", "[1, 3]", "2")
        assert code == 0
        assert out.splitlines()[0].startswith("# warning: tau = 1")
        assert out.splitlines()[1] == "step,H,T,TV,certified_bound"
        assert "tau = 1" in err

    def test_not_stochastic(self, capsys):
        code, _, err = run(capsys, "markov", "[[1, 1], [1, 1]]", "[1, 1]", "2")
        assert code == 1
        assert "row 0" in err

    def test_negative_steps(self, capsys):
        code, _, _ = run(capsys, "markov", "[[0.5, 0.5], [0.5, 0.5]]", "[1, 1]", "-3")
        assert code == 2


class TestGeometry:
    def test_ball(self, capsys):
        code, out, _ = run(capsys, "ball", "[1, 1, 1]", "0.6931471805599453")
        data = json.loads(out)
        assert code == 0
        assert len(data["theta_vertices"]) == 6
        assert len(data["halfspaces"]) == 6
        assert data["simplex_vertices"][0] == pytest.approx([0.25, 0.5, 0.25])

    def test_boundary_center(self, capsys):
        code, _, err = run(capsys, "ball", "[1, 0, 1]", "1.0")
        assert code == 1
        assert "boundary" in err

    def test_tile_with_svg(self, capsys, tmp_path):
        svg = tmp_path / "tiling.svg"
        code, out, _ = run(capsys, "tile", "[1, 1, 1]", "0.5", "1", "--svg", str(svg), "--view", "theta")
        data = json.loads(out)
        assert code == 0
        assert len(data["balls"]) == 7
        assert data["svg_path"] == str(svg)
        text = svg.read_text(encoding="utf-8")
        assert text.startswith("<?xml")
        assert text.count("<path") == 7

    def test_tile_needs_two_dimensions(self, capsys):
        code, _, _ = run(capsys, "tile", "[1, 1, 1, 1]", "0.5", "1")
        assert code == 1


class TestBounds:
    def test_reports(self, capsys):
        code, out, _ = run(capsys, "bounds", "[3, 1]", "[1, 3]")
        reports = json.loads(out)
        assert code == 0
        assert len(reports) == 16
        assert all(r["holds"] for r in reports)
        assert reports[0]["convention"] == "tv = l1 (factor-2 convention)"

    def test_inapplicable_reports(self, capsys):
        code, out, _ = run(capsys, "bounds", "[1, 0]", "[1, 1]", "--support", "[0, 2]")
        reports = json.loads(out)
        assert code == 0
        skipped = [r for r in reports if not r["applicable"]]
        assert skipped and all(r["rhs_value"] is None for r in skipped)


class TestUsage:
    def test_no_command(self, capsys):
        code, _, err = run(capsys)
        assert code == 2
        assert "usage" in err

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    @pytest.mark.parametrize("option", ["speed=1", "contraction=abc", "bound"])
    def test_bad_tolerance(self, capsys, option):
        assert run(capsys, "--tolerance", option, "tau", "[[1, 1], [1, 1]]")[0] == 2

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_output_file(self, capsys, tmp_path, golden_dir):
        target = tmp_path / "out.json"
        code, out, _ = run(capsys, "--output", str(target), "tau", "[[2, 1], [1, 2]]")
        assert code == 0
        assert out == ""
        assert target.read_text(encoding="utf-8") == (golden_dir / "tau_2x2.json").read_text(encoding="utf-8")

    def test_log_file(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("HILBERT_CONE_LOG_DIR", str(tmp_path / "logs"))
        run(capsys, "--log-level", "INFO", "tau", "[[1, 1], [1, 1]]")
        lines = (tmp_path / "logs" / "hilbert_cone.log").read_text(encoding="utf-8").splitlines()
        assert json.loads(lines[-1])["message"] == "command tau - exit 0"
