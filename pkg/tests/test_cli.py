"""Command line behavior: exit codes, summary line, bench suites, gen files.

Every test drives cli.main(argv) in process. NSPMR_SEED is cleared per test
so a value leaking from the host environment cannot skew determinism checks.
"""

import csv
import subprocess
import sys

import pytest

from nspmr import cli
from nspmr.geometry import Point2, Polygon
from nspmr.sim import grid_oracle
from nspmr.world import Bounds, Obstacle, Scenario, parse_scenario, serialize_scenario, validate_scenario


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    monkeypatch.delenv("NSPMR_SEED", raising=False)


def run_main(argv, capsys):
    rc = cli.main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def read_report(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return rows


# --- run --------------------------------------------------------------------------

def test_run_summary_line(capsys):
    rc, out, _ = run_main(["run", "--scenario", "builtin:scenario1", "--planner", "nspmr"], capsys)
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 1
    outcome, length, time_s, iters = lines[0].split()
    assert outcome == "goal_reached"
    assert 34.4 <= float(length) <= 46.6
    assert float(time_s) == pytest.approx(float(length) / 10.0, abs=1e-3)
    assert int(iters) > 0


def test_run_writes_artifacts(tmp_path, capsys):
    out_csv = tmp_path / "t.csv"
    out_svg = tmp_path / "t.svg"
    rc, _, _ = run_main(
        ["run", "--scenario", "builtin:scenario1", "--planner", "bug2",
         "--out-csv", str(out_csv), "--out-svg", str(out_svg)],
        capsys,
    )
    assert rc == 0
    assert out_csv.read_text().startswith("iter,t_s,x_m,y_m,event,dir_deg\n")
    svg = out_svg.read_text()
    assert svg.count("<polyline") == 1
    assert svg.count("<polygon") == 3


def test_run_iteration_limit_exits_2(capsys):
    rc, out, _ = run_main(
        ["run", "--scenario", "builtin:scenario1", "--planner", "nspmr", "--max-iters", "5"],
        capsys,
    )
    assert rc == 2
    assert out.split()[0] == "iteration_limit"


def test_run_unreachable_exits_2(tmp_path, capsys):
    # goal tucked inside the boundary clearance skin: bug1 surveys and gives up
    s = Scenario(
        name="skin_goal",
        bounds=Bounds(-5, -5, 10, 10),
        start=Point2(-3, 0.5),
        goal=Point2(2.06, 0.5),
        obstacles=(Obstacle(Polygon((Point2(0, 0), Point2(2, 0), Point2(2, 1), Point2(0, 1)))),),
    )
    path = tmp_path / "skin.json"
    path.write_text(serialize_scenario(s))
    rc, out, _ = run_main(["run", "--scenario", str(path), "--planner", "bug1"], capsys)
    assert rc == 2
    assert out.split()[0] == "unreachable"


def test_run_usage_and_validation_errors_exit_1(tmp_path, capsys):
    cases = [
        ["run", "--planner", "nspmr"],  # missing --scenario
        ["run", "--scenario", "builtin:scenario1", "--planner", "astar"],
        ["run", "--scenario", "builtin:nope", "--planner", "nspmr"],
        ["run", "--scenario", str(tmp_path / "absent.json"), "--planner", "nspmr"],
        ["run", "--scenario", "builtin:scenario1", "--planner", "nspmr", "--delta", "-1"],
        ["run", "--scenario", "builtin:scenario1", "--planner", "nspmr", "--max-iters", "0"],
        ["nonsense"],
        [],
    ]
    for argv in cases:
        rc, _, err = run_main(argv, capsys)
        assert rc == 1, argv
        assert err, argv


def test_run_sensor_range_override_changes_path(capsys):
    rc, out_far, _ = run_main(
        ["run", "--scenario", "builtin:office_like", "--planner", "nspmr"], capsys)
    assert rc == 0
    rc, out_near, _ = run_main(
        ["run", "--scenario", "builtin:office_like", "--planner", "nspmr", "--sensor-range", "2"],
        capsys,
    )
    assert rc == 0
    assert float(out_near.split()[1]) > float(out_far.split()[1])


def test_run_random_scenario_seeding(tmp_path, monkeypatch, capsys):
    args = ["run", "--scenario", "random", "--planner", "nspmr"]
    monkeypatch.setenv("NSPMR_SEED", "7")
    rc, env_out, _ = run_main(args + ["--out-csv", str(tmp_path / "a.csv")], capsys)
    assert rc == 0
    rc, flag_out, _ = run_main(args + ["--seed", "7", "--out-csv", str(tmp_path / "b.csv")], capsys)
    assert rc == 0
    assert env_out == flag_out
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    rc, other_out, _ = run_main(args + ["--seed", "8", "--out-csv", str(tmp_path / "c.csv")], capsys)
    assert rc == 0
    assert (tmp_path / "a.csv").read_bytes() != (tmp_path / "c.csv").read_bytes()


def test_bad_env_seed_only_matters_when_used(monkeypatch, capsys):
    monkeypatch.setenv("NSPMR_SEED", "pony")
    rc, _, _ = run_main(["run", "--scenario", "builtin:scenario1", "--planner", "nspmr"], capsys)
    assert rc == 0
    rc, _, err = run_main(["run", "--scenario", "random", "--planner", "nspmr"], capsys)
    assert rc == 1
    assert "NSPMR_SEED" in err


# --- bench ------------------------------------------------------------------------

def test_bench_paper_suite(tmp_path, capsys):
    report = tmp_path / "report.csv"
    rc, out, err = run_main(["bench", "--suite", "paper", "--out", str(report)], capsys)
    assert rc == 0
    table = out.splitlines()
    assert table[0].split() == list("scenario planner outcome length_m time_s iters oracle_m ratio".split())

    rows = read_report(report)
    assert len(rows) == len(table) - 1
    keys = [(r["scenario"], r["planner"]) for r in rows]
    assert keys == sorted(keys)
    by_scenario = {}
    for r in rows:
        by_scenario.setdefault(r["scenario"], set()).add(r["planner"])
    assert by_scenario["scenario1"] == {"nspmr", "bug1", "bug2"}
    assert by_scenario["concave_trap"] == {"nspmr", "bug1", "bug2"}
    # combinations the wall followers reject are skipped, loudly
    assert by_scenario["dynamic_crossing"] == {"nspmr"}
    assert by_scenario["triangle_loop"] == {"nspmr"}
    assert "skipping" in err
    for r in rows:
        assert r["outcome"] == "goal_reached"
        if r["scenario"] == "dynamic_crossing":
            assert r["oracle_m"] == "" and r["ratio"] == ""
        else:
            assert float(r["ratio"]) == pytest.approx(
                float(r["length_m"]) / float(r["oracle_m"]), rel=1e-6)


def test_bench_sensor_range_sweep_office_trend(tmp_path, capsys):
    report = tmp_path / "sweep.csv"
    rc, _, _ = run_main(
        ["bench", "--suite", "paper", "--planners", "nspmr", "--ranges", "2,10,20",
         "--out", str(report)],
        capsys,
    )
    assert rc == 0
    lengths = {}
    for r in read_report(report):
        if r["scenario"].startswith("office_like[d="):
            d = float(r["scenario"].split("d=")[1].rstrip("]"))
            lengths[d] = float(r["length_m"])
    assert set(lengths) == {2.0, 10.0, 20.0}
    assert lengths[2.0] >= lengths[10.0] >= lengths[20.0]


def test_bench_random_suite_deterministic(tmp_path, capsys):
    argv = ["bench", "--suite", "random", "--seeds", "2", "--planners", "nspmr"]
    rc, out_a, _ = run_main(argv + ["--out", str(tmp_path / "a.csv")], capsys)
    assert rc == 0
    rc, out_b, _ = run_main(argv + ["--out", str(tmp_path / "b.csv")], capsys)
    assert rc == 0
    assert out_a == out_b
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    rows = read_report(tmp_path / "a.csv")
    assert [r["scenario"] for r in rows] == ["random-0", "random-1"]


def test_bench_guards_exit_1(capsys):
    cases = [
        ["bench", "--suite", "random", "--seeds", "0"],
        ["bench", "--planners", " , "],
        ["bench", "--planners", "nspmr,warp"],
        ["bench", "--ranges", "0"],
        ["bench", "--ranges", "two"],
        ["bench", "--suite", "exam"],
    ]
    for argv in cases:
        rc, _, err = run_main(argv, capsys)
        assert rc == 1, argv
        assert err, argv


# --- gen --------------------------------------------------------------------------

def test_gen_empty_world(tmp_path, capsys):
    out = tmp_path / "w0.json"
    rc, _, _ = run_main(["gen", "--seed", "1", "--count", "0", "--out", str(out)], capsys)
    assert rc == 0
    s = parse_scenario(out.read_text())
    assert s.obstacles == ()
    assert validate_scenario(s) == []


def test_gen_deterministic_and_solvable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        rc, _, _ = run_main(["gen", "--seed", "3", "--count", "8", "--out", str(path)], capsys)
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()
    s = parse_scenario(a.read_text())
    assert len(s.obstacles) == 8
    assert validate_scenario(s) == []
    assert grid_oracle(s, s.delta / 2) is not None


def test_gen_seed_env_default(tmp_path, monkeypatch, capsys):
    flag = tmp_path / "flag.json"
    rc, _, _ = run_main(["gen", "--seed", "3", "--out", str(flag)], capsys)
    assert rc == 0
    monkeypatch.setenv("NSPMR_SEED", "3")
    env = tmp_path / "env.json"
    rc, _, _ = run_main(["gen", "--out", str(env)], capsys)
    assert rc == 0
    assert flag.read_bytes() == env.read_bytes()
    override = tmp_path / "override.json"
    rc, _, _ = run_main(["gen", "--seed", "1", "--count", "0", "--out", str(override)], capsys)
    assert rc == 0
    assert override.read_bytes() != env.read_bytes()


def test_gen_negative_count_exits_1(tmp_path, capsys):
    rc, _, err = run_main(["gen", "--seed", "1", "--count", "-2", "--out", str(tmp_path / "w.json")], capsys)
    assert rc == 1
    assert "count" in err


# --- process-level entry point ----------------------------------------------------

def test_module_invocation_round_trip(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "nspmr.cli", "run",
         "--scenario", "builtin:scenario1", "--planner", "nspmr"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.split()[0] == "goal_reached"


def test_help_exits_0(capsys):
    assert cli.main(["--help"]) == 0
    capsys.readouterr()
