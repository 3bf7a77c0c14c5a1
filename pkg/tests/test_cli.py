"""Tests for the divrisk command line."""

import json
import math

import pytest

from divrisk import __version__
from divrisk.catalog import burg_two_r, kl_two_point, never_bregman
from divrisk.cli import (
    EXIT_CONVERGENCE,
    EXIT_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    check_gcurve_rows,
    run,
)
from divrisk.errors import ConvergenceError
from divrisk.scenario import write_scenario_csv
from divrisk.solver import WorstCaseSolver
from divrisk.utils import parse_key_value_lines, read_table

K_CRITICAL = math.log(2.0) - 0.5


@pytest.fixture
def burg_csv(tmp_path):
    path = tmp_path / "burg2r.csv"
    write_scenario_csv(burg_two_r(), str(path))
    return str(path)


@pytest.fixture
def kl_csv(tmp_path):
    path = tmp_path / "kl2pt.csv"
    write_scenario_csv(kl_two_point(), str(path))
    return str(path)


def _fields(capsys):
    return parse_key_value_lines(capsys.readouterr().out.splitlines())


def _write_p(path, node_ids, value):
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write("node_id,p\n")
        for node in node_ids:
            f.write(f"{node},{value}\n")
    return str(path)


# ============================================================================
# Report commands
# ============================================================================

class TestReports:
    def test_example(self, tmp_path, capsys):
        out = tmp_path / "never.csv"
        assert run(["example", "never-breg", "--out", str(out)]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["atoms"] == "200"
        assert fields["closure_points"] == "2"
        assert out.exists()

    def test_example_honours_quadrature_config(self, tmp_path, capsys):
        config = tmp_path / "solver.json"
        config.write_text(json.dumps({"quadrature_nodes": 40}))
        out = tmp_path / "burg.csv"
        assert run(["example", "burg2r", "--out", str(out), "--config", str(config)]) == EXIT_OK
        assert _fields(capsys)["atoms"] == "40"
        header, rows = read_table(str(out))
        assert len(rows) == 42

    def test_vk(self, burg_csv, capsys):
        code = run(["vk", "--scenario", burg_csv, "--divergence", "burg", "--k", "1.0"])
        assert code == EXIT_OK
        fields = _fields(capsys)
        assert abs(float(fields["v"]) - 0.223130) < 1e-5
        assert fields["is_density"] == "false"

    def test_wlambda(self, burg_csv, capsys):
        assert run(["wlambda", "-s", burg_csv, "-d", "burg", "--lambda", "0.25"]) == EXIT_OK
        fields = _fields(capsys)
        assert abs(float(fields["W"]) - 0.4715735) < 1e-5
        assert fields["case"] == "BOUNDARY"

    def test_classify(self, burg_csv, capsys):
        assert run(["classify", "--scenario", burg_csv, "--divergence", "burg"]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["regime"] == "CRITICAL"
        assert abs(float(fields["k_critical"]) - K_CRITICAL) < 1e-5

    def test_classify_with_k(self, burg_csv, capsys):
        assert run(["classify", "-s", burg_csv, "-d", "burg", "--k", "0.1"]) == EXIT_OK
        assert _fields(capsys)["wcd_at_probe"] == "true"

    def test_classify_bregman(self, tmp_path, capsys):
        path = tmp_path / "never.csv"
        write_scenario_csv(never_bregman(n=60), str(path))
        assert run(["classify", "-s", str(path), "-d", "burg", "--bregman"]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["regime"] == "NEVER_WCD_OBSERVED"
        assert fields["evidential"] == "true"

    def test_localiser(self, kl_csv, tmp_path, capsys):
        out = tmp_path / "q.csv"
        assert run(["localiser", "-s", kl_csv, "--k", "0.2", "--out", str(out)]) == EXIT_OK
        assert _fields(capsys)["rows"] == "2"
        header, rows = read_table(str(out))
        assert header == ["node_id", "coordinate", "q_hat"]
        assert [r["node_id"] for r in rows] == ["a0", "a1"]

    def test_localiser_beyond_kmax_is_empty(self, kl_csv, tmp_path, capsys):
        out = tmp_path / "q.csv"
        assert run(["localiser", "-s", kl_csv, "--k", "2.0", "--out", str(out)]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["trivial_branch"] == "K_GE_KMAX"
        assert fields["rows"] == "0"

    def test_version(self, capsys):
        assert run(["version"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == f"divrisk {__version__}"

    def test_no_command(self, capsys):
        assert run([]) == EXIT_OK
        assert "usage" in capsys.readouterr().out


# ============================================================================
# Certification
# ============================================================================

class TestCertify:
    def test_bound_holds(self, burg_csv, tmp_path, capsys):
        p = _write_p(tmp_path / "p.csv", burg_two_r().node_ids, 1.0)
        code = run(["certify", "-s", burg_csv, "-d", "burg", "--p", p,
                    "--k", "1", "--eps", "0.45", "--gamma", "0"])
        assert code == EXIT_OK
        fields = _fields(capsys)
        assert abs(float(fields["bregman_to_localiser"]) - 0.987793) < 1e-4
        assert fields["bound_holds"] == "true"

    def test_bound_fails(self, burg_csv, tmp_path, capsys):
        p = _write_p(tmp_path / "p.csv", burg_two_r().node_ids, 1.0)
        code = run(["certify", "-s", burg_csv, "-d", "burg", "--p", p,
                    "--k", "1", "--eps", "0", "--gamma", "0"])
        assert code == EXIT_FAILED
        assert _fields(capsys)["is_awcd"] == "false"

    def test_missing_atoms(self, burg_csv, tmp_path, capsys):
        p = _write_p(tmp_path / "p.csv", ["end_lo"], 1.0)
        code = run(["certify", "-s", burg_csv, "-d", "burg", "--p", p,
                    "--k", "1", "--eps", "0", "--gamma", "0"])
        assert code == EXIT_INVALID
        assert "no p value" in capsys.readouterr().err


# ============================================================================
# Curves
# ============================================================================

class TestCurves:
    def _gcurve(self, scenario, out):
        return run(["gcurve", "-s", scenario, "-d", "burg", "--theta2-from", "-8",
                    "--theta2-to", "0", "--steps", "33", "--out", str(out)])

    def test_gcurve_round_trip(self, burg_csv, tmp_path, capsys):
        out = tmp_path / "g.csv"
        assert self._gcurve(burg_csv, out) == EXIT_OK
        assert _fields(capsys)["rows"] == "33"
        assert run(["check", "--gcurve", str(out)]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["convex"] == "true"
        assert fields["g_zero_at_origin"] == "true"

    def test_tampered_gcurve_fails(self, burg_csv, tmp_path, capsys):
        out = tmp_path / "g.csv"
        self._gcurve(burg_csv, out)
        lines = out.read_text(encoding="utf-8").splitlines()
        cells = lines[16].split(",")
        cells[1] = "5"
        lines[16] = ",".join(cells)
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")
        capsys.readouterr()
        assert run(["check", "--gcurve", str(out)]) == EXIT_FAILED
        assert _fields(capsys)["convex"] == "false"

    def test_check_rejects_other_tables(self, kl_csv, capsys):
        assert run(["check", "--gcurve", kl_csv]) == EXIT_INVALID

    def test_byte_identical_outputs(self, burg_csv, tmp_path):
        first, second = tmp_path / "g1.csv", tmp_path / "g2.csv"
        self._gcurve(burg_csv, first)
        self._gcurve(burg_csv, second)
        assert first.read_bytes() == second.read_bytes()

    def test_fcurve(self, kl_csv, tmp_path, capsys):
        out = tmp_path / "f.csv"
        code = run(["fcurve", "-s", kl_csv, "--b-from", "0.1", "--b-to", "0.5",
                    "--steps", "5", "--out", str(out)])
        assert code == EXIT_OK
        header, rows = read_table(str(out))
        assert header == ["b", "F"]
        assert rows[-1]["F"] == "0"

    def test_wcurve(self, kl_csv, tmp_path, capsys):
        out = tmp_path / "w.csv"
        code = run(["wcurve", "-s", kl_csv, "--lambda-from", "0.5", "--lambda-to", "2",
                    "--steps", "4", "--out", str(out)])
        assert code == EXIT_OK
        header, rows = read_table(str(out))
        assert header == ["lambda", "W", "theta2", "mass"]
        assert len(rows) == 4

    def test_bad_steps(self, kl_csv, tmp_path):
        code = run(["fcurve", "-s", kl_csv, "--b-from", "0.1", "--b-to", "0.5",
                    "--steps", "0", "--out", str(tmp_path / "f.csv")])
        assert code == EXIT_INVALID

    def test_check_rows_direct(self):
        rows = [{"theta2": str(t), "G": str(t * t)} for t in (-2.0, -1.0, 0.0)]
        result = check_gcurve_rows(rows)
        assert result["passed"] is True
        assert result["rows"] == 3


# ============================================================================
# Errors and ambient flags
# ============================================================================

class TestErrors:
    def test_single_atom_file(self, tmp_path, capsys):
        path = tmp_path / "one.csv"
        path.write_text("node_id,coordinate,weight,payoff,p0\na,0,1,0,1\n", encoding="utf-8")
        assert run(["vk", "-s", str(path), "--k", "1"]) == EXIT_INVALID
        assert "Error" in capsys.readouterr().err

    def test_missing_scenario_flag(self, capsys):
        assert run(["vk", "--k", "1"]) == EXIT_INVALID
        assert "--scenario" in capsys.readouterr().err

    def test_missing_scenario_file(self, tmp_path):
        assert run(["vk", "-s", str(tmp_path / "nope.csv")]) == EXIT_INVALID

    def test_unknown_divergence(self, kl_csv):
        assert run(["vk", "-s", kl_csv, "-d", "hellinger"]) == EXIT_INVALID

    def test_f_divergence_needs_unit_default(self, tmp_path):
        path = tmp_path / "never.csv"
        write_scenario_csv(never_bregman(n=30), str(path))
        assert run(["vk", "-s", str(path), "-d", "kl"]) == EXIT_INVALID

    def test_convergence_error(self, kl_csv, monkeypatch, capsys):
        def fail(self, k):
            raise ConvergenceError("maximum not bracketed")

        monkeypatch.setattr(WorstCaseSolver, "value_at_k", fail)
        assert run(["vk", "-s", kl_csv]) == EXIT_CONVERGENCE
        assert "not bracketed" in capsys.readouterr().err


class TestAmbientFlags:
    def test_trace_file(self, kl_csv, tmp_path):
        trace = tmp_path / "trace.log"
        assert run(["vk", "-s", kl_csv, "--k", "0.2", "--trace", str(trace)]) == EXIT_OK
        content = trace.read_text(encoding="utf-8")
        assert "RUN SUMMARY" in content
        assert "Command: vk" in content
        assert "WORST CASE VALUE" in content

    def test_config_file(self, burg_csv, tmp_path, capsys):
        config = tmp_path / "solver.json"
        config.write_text(json.dumps({"probe_count": 8, "probe_max_exp": 6}), encoding="utf-8")
        assert run(["classify", "-s", burg_csv, "-d", "burg", "--config", str(config)]) == EXIT_OK
        fields = _fields(capsys)
        assert fields["probe_count"] == "8"
        assert fields["regime"] == "CRITICAL"
