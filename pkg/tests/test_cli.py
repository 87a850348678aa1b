import json
import math

import pytest

from app import main
from config_settings import AppConfig
from core_solver import LambertSolver

QUARTER = ["--ra", "1", "--rb", "1", "--theta", repr(math.pi / 2)]
GENERAL = ["--ax", "1.2", "--ay", "0.3", "--bx", "-0.4", "--by", "1.7"]


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_circular_solve(capsys):
    code, out, _ = run(capsys, "solve", *QUARTER, "--tof", repr(math.pi / 2), "--class", "direct")
    assert code == AppConfig.EXIT_OK
    report = json.loads(out)
    assert report["schemaVersion"] == AppConfig.SCHEMA_VERSION
    assert report["command"] == "solve"
    (sol,) = report["solutions"]
    assert sol["H"] == pytest.approx(-0.5, abs=1e-9)
    assert sol["eta"] == pytest.approx(0.0, abs=1e-9)
    assert sol["kind"] == "DirectSimple"
    (state,) = sol["states"]
    assert state["direction"] == "ccw"
    assert state["vel"] == pytest.approx([0.0, 1.0], abs=1e-9)


def test_mu_rescaling(capsys):
    code, out, _ = run(capsys, "solve", *QUARTER, "--mu", "4", "--tof", repr(math.pi / 4), "--class", "direct")
    assert code == AppConfig.EXIT_OK
    (sol,) = json.loads(out)["solutions"]
    assert sol["H"] == pytest.approx(-2.0, abs=1e-8)
    assert sol["states"][0]["vel"] == pytest.approx([0.0, 2.0], abs=1e-8)
    assert sol["states"][0]["pos"] == pytest.approx([1.0, 0.0])


def test_parabolic_rectilinear_anchor(capsys):
    code, out, _ = run(capsys, "solve", "--xa", "2", "--xb", "1", "--tof", "0.8619288", "--class", "direct",
                       "--rectilinear")
    assert code == AppConfig.EXIT_OK
    (sol,) = json.loads(out)["solutions"]
    assert sol["vA"] == pytest.approx(-1.0, abs=1e-5)
    assert sol["H"] == pytest.approx(0.0, abs=1e-5)
    assert sol["states"][0]["direction"] == "radial"


def test_general_solve_finds_both_tails(capsys):
    code, out, _ = run(capsys, "solve", *GENERAL, "--tof", "2.5", "--compact")
    assert code == AppConfig.EXIT_OK
    assert "\n" not in out.strip()
    tails = [s["tail"] for s in json.loads(out)["solutions"]]
    assert tails == ["direct", "indirect"]


def test_nearly_opposite_rays_solve(capsys):
    code, out, _ = run(capsys, "solve", "--ra", "2", "--rb", "1", "--theta", "3.1415916535897933", "--tof", "3")
    assert code == AppConfig.EXIT_OK
    sols = json.loads(out)["solutions"]
    assert [s["tail"] for s in sols] == ["direct", "indirect"]
    assert all(len(s["states"]) == 1 for s in sols)


def test_no_arc_below_minimum_time(capsys):
    code, out, err = run(capsys, "solve", *GENERAL, "--tof", "2.5", "--revs", "3", "--class", "direct")
    assert code == AppConfig.EXIT_EMPTY
    assert json.loads(out)["solutions"] == []
    assert "No arc" in err


def test_direction_filter(capsys):
    code, _, _ = run(capsys, "solve", *QUARTER, "--tof", repr(math.pi / 2), "--class", "direct",
                     "--direction", "cw")
    assert code == AppConfig.EXIT_EMPTY
    code, out, _ = run(capsys, "solve", *QUARTER, "--tof", repr(math.pi / 2), "--class", "direct",
                       "--direction", "ccw")
    assert code == AppConfig.EXIT_OK
    assert len(json.loads(out)["solutions"]) == 1


def test_degenerate_rectilinear_solve(capsys):
    code, out, _ = run(capsys, "solve", "--xa", "3", "--xb", "0", "--rectilinear", "--tof", "2")
    assert code == AppConfig.EXIT_OK
    (sol,) = json.loads(out)["solutions"]
    assert sol["tail"] == "indirect"
    assert sol["multiplicity"] == 2
    assert sol["states"] == []


@pytest.mark.parametrize("args", [
    ["solve", *GENERAL, *QUARTER, "--tof", "1"],
    ["solve", *QUARTER],
    ["solve", *QUARTER, "--tof", "1", "--bogus"],
    ["solve", *QUARTER, "--tof", "-1"],
    ["solve", "--ra", "1", "--rb", "1", "--tof", "1"],
    ["solve", *QUARTER, "--tof", "1", "--class", "sideways"],
    ["launch", *QUARTER, "--tof", "1"],
])
def test_usage_errors(capsys, args):
    code, out, err = run(capsys, *args)
    assert code == AppConfig.EXIT_USAGE
    assert out == ""
    assert err


def test_domain_error_maps_to_usage_code(capsys):
    code, _, err = run(capsys, "solve", "--ax", "1", "--ay", "1", "--bx", "1", "--by", "1", "--tof", "1")
    assert code == AppConfig.EXIT_USAGE
    assert "CoincidentPoints" in err


def test_count_degenerate(capsys):
    code, out, _ = run(capsys, "count", "--ax", "1", "--ay", "0", "--bx", "-2", "--by", "0", "--tof", "3")
    assert code == AppConfig.EXIT_OK
    report = json.loads(out)
    assert report["total"] == 2
    row = report["rows"][0]
    assert (row["n"], row["direct"], row["indirect"]) == (0, 0, 2)


def test_count_with_revs_reports_minimum_time(capsys):
    code, out, _ = run(capsys, "count", *GENERAL, "--tof", "2.5", "--revs", "2", "--class", "direct",
                       "--format", "csv")
    assert code == AppConfig.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split(",") == AppConfig.CENSUS_COLUMNS
    assert [line.split(",")[0] for line in lines[1:]] == ["0", "2"]


def test_curve_csv(capsys):
    code, out, _ = run(capsys, "curve", "--xa", "2", "--xb", "1", "--rectilinear", "--format", "csv",
                       "--points", "20")
    assert code == AppConfig.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split(",") == AppConfig.CURVE_COLUMNS
    assert len(lines) == 1 + 2 * 20


@pytest.mark.parametrize("parameter", ["eta", "x"])
def test_curve_is_increasing_in_time_for_direct(capsys, parameter):
    code, out, _ = run(capsys, "curve", *GENERAL, "--class", "direct", "--parameter", parameter,
                       "--points", "30")
    assert code == AppConfig.EXIT_OK
    rows = json.loads(out)["rows"]
    times = [row["T"] for row in rows]
    assert times == sorted(times)
    assert all(row["tail"] == "direct" for row in rows)


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", *GENERAL, "--tof", "2.5")
    assert code == AppConfig.EXIT_OK
    report = json.loads(out)
    assert report["passed"]
    assert len(report["records"]) == 2
    assert all(r["residual"] <= report["tolerance"] for r in report["records"])


def test_verify_needs_planar_problem(capsys):
    code, _, _ = run(capsys, "verify", "--xa", "3", "--xb", "0", "--rectilinear", "--tof", "2")
    assert code == AppConfig.EXIT_USAGE


def test_csv_solve_columns(capsys):
    code, out, _ = run(capsys, "solve", *GENERAL, "--tof", "2.5", "--format", "csv")
    assert code == AppConfig.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split(",") == AppConfig.SOLUTION_COLUMNS
    assert len(lines) == 3


def test_human_output(capsys):
    code, out, _ = run(capsys, "solve", *QUARTER, "--tof", repr(math.pi / 2), "--format", "human")
    assert code == AppConfig.EXIT_OK
    assert out.startswith(f"{AppConfig.APP_NAME} :: solve")
    assert "transfer angle" in out


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "solve", *GENERAL, "--tof", "2.5", "--out", str(target))
    assert code == AppConfig.EXIT_OK
    assert out == ""
    assert f"2 arcs written to {target}" in err
    assert len(json.loads(target.read_text())["solutions"]) == 2


def test_batch_keeps_order_and_reports_worst_code(capsys, tmp_path):
    batch = tmp_path / "problems.json"
    batch.write_text(json.dumps([
        {"ra": 1, "rb": 1, "theta": math.pi / 2, "tof": math.pi / 2, "class": "direct"},
        {"ax": 1, "ay": 0, "bx": 1, "by": 0, "tof": 1},
        {"xa": 2, "xb": 1, "rectilinear": True, "tof": 5},
    ]))
    code, out, err = run(capsys, "solve", "--batch", str(batch))
    assert code == AppConfig.EXIT_USAGE
    payload = json.loads(out)
    assert len(payload) == 3
    assert payload[0]["solutions"][0]["H"] == pytest.approx(-0.5, abs=1e-9)
    assert payload[1]["exitCode"] == AppConfig.EXIT_USAGE
    assert "CoincidentPoints" in payload[1]["error"]
    assert payload[2]["command"] == "solve"
    assert "1 of 3" in err


def test_batch_entry_validation(capsys, tmp_path):
    batch = tmp_path / "problems.json"
    batch.write_text(json.dumps([{"ra": 1, "rb": 1, "theta": 1.0}]))
    code, out, err = run(capsys, "solve", "--batch", str(batch))
    assert code == AppConfig.EXIT_USAGE
    assert out == ""
    assert "batch entry 0" in err


def test_collinear_tolerance_from_environment(capsys, monkeypatch):
    args = ["count", "--ra", "2", "--rb", "1", "--theta", repr(math.pi - 1e-8), "--tof", "3"]
    code, out, _ = run(capsys, *args)
    assert code == AppConfig.EXIT_OK
    row = json.loads(out)["rows"][0]
    assert (row["direct"], row["indirect"]) == (1, 1)

    monkeypatch.setenv("LAMBERT_COLLINEAR_TOL", "1e-6")
    code, out, _ = run(capsys, *args)
    assert code == AppConfig.EXIT_OK
    row = json.loads(out)["rows"][0]
    assert (row["direct"], row["indirect"]) == (0, 2)


def test_indirect_samples_from_environment(capsys, monkeypatch):
    seen = []
    original = LambertSolver.solve_multirev_indirect

    def spy(self, re, n, tof, samples=None):
        seen.append((samples, self.config.indirect_samples))
        return original(self, re, n, tof, samples)

    monkeypatch.setattr(LambertSolver, "solve_multirev_indirect", spy)
    monkeypatch.setenv("LAMBERT_INDIRECT_SAMPLES", "64")
    code, _, err = run(capsys, "count", *GENERAL, "--tof", "40", "--revs", "1", "--class", "indirect")
    assert code == AppConfig.EXIT_OK
    assert "n = 1 come from sampling" in err
    assert seen == [(None, 64)]

    seen.clear()
    run(capsys, "count", *GENERAL, "--tof", "40", "--revs", "1", "--class", "indirect", "--samples", "32")
    assert seen == [(32, 64)]
