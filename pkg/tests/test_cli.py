import csv
import json

import pytest

from icnoma import cli
from icnoma.properties import PropertyOutcome
from icnoma.reporting import CSV_COLUMNS, run, sweep
from icnoma.scenario import ingest
from conftest import SCENARIO_DIR

CONVOY6 = str(SCENARIO_DIR / "convoy_6user.json")
CROSS4 = str(SCENARIO_DIR / "cross_pair_4user.json")
NEAR_HEAVY = str(SCENARIO_DIR / "convoy_7user_near_heavy.json")


class TestRunCommand:
    def test_writes_json_and_csv(self, tmp_path, capsys):
        rc = cli.main(["run", CONVOY6, "--out", str(tmp_path)])
        assert rc == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["lengths"] == {"l_f": 2, "l_m": 2, "l_n": 0}
        assert report["case"] == "DEGENERATE"
        assert report["delivered"] is True
        with (tmp_path / "report.csv").open() as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0].keys()) == CSV_COLUMNS
        assert rows[0]["l_icnoma"] == "2"

    def test_stdout_contains_report(self, capsys):
        rc = cli.main(["run", CROSS4])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["lengths"] == {"l_f": 1, "l_m": 1, "l_n": 1}
        assert out["case"] == "I"
        assert out["l_icnoma"] == 1
        assert out["l_ic"] == 3

    def test_power_flag_controls_baseline(self, capsys):
        rc = cli.main(["run", CROSS4, "--power", "25"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["power"]["P_ic"] == 25


class TestSolveCommand:
    def test_whole_problem_optimum(self, capsys):
        rc = cli.main(["solve", CROSS4])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["length"] == 3

    def test_greedy_solver_flag(self, capsys):
        rc = cli.main(["solve", CROSS4, "--solver", "greedy"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["solver"] == "greedy"
        assert out["length"] >= 3


class TestSweepCommand:
    def test_csv_and_figures(self, tmp_path, capsys):
        rc = cli.main(
            [
                "sweep",
                CONVOY6,
                NEAR_HEAVY,
                "--powers",
                "1:100:5",
                "--out",
                str(tmp_path),
            ]
        )
        assert rc == 0
        csv_path = tmp_path / "sweep.csv"
        assert csv_path.exists()
        with csv_path.open() as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 10  # two scenarios x five powers
        assert list(rows[0].keys()) == ["scenario", "P", *CSV_COLUMNS]
        assert (tmp_path / "avg_rate_vs_power.png").exists()
        assert (tmp_path / "avg_power_vs_power.png").exists()

    def test_no_figures_flag(self, tmp_path, capsys):
        rc = cli.main(
            ["sweep", CONVOY6, "--powers", "1,10", "--no-figures", "--out", str(tmp_path)]
        )
        assert rc == 0
        assert (tmp_path / "sweep.csv").exists()
        assert not (tmp_path / "avg_rate_vs_power.png").exists()

    def test_rate_monotone_in_power(self):
        scenario = ingest(NEAR_HEAVY)
        rows = sweep(scenario, [float(p) for p in range(1, 101, 9)])
        rates = [r.report.rate.r_avg for r in rows]
        assert all(b > a for a, b in zip(rates, rates[1:]))

    def test_single_point_grid_matches_run(self):
        scenario = ingest(CONVOY6)
        rows = sweep(scenario, [10.0])
        direct = run(scenario, power=10.0)
        assert rows[0].report.rate.r_avg == pytest.approx(direct.rate.r_avg)
        assert rows[0].report.power.p_avg == pytest.approx(direct.power.p_avg)


class TestGenerateCommand:
    def test_round_trip_through_cli(self, tmp_path, capsys):
        out = tmp_path / "generated.json"
        rc = cli.main(
            [
                "generate",
                "--messages",
                "6",
                "--group-sizes",
                "2,2,2",
                "--seed",
                "5",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        scenario = ingest(out)
        assert scenario.n == 6
        assert scenario.n_users == 6
        rc = cli.main(["run", str(out)])
        assert rc == 0


class TestBaselineCommand:
    def test_reports_comparisons(self, capsys):
        rc = cli.main(["baseline", NEAR_HEAVY])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["l_ic"] == 6
        assert out["lengths"] == {"l_f": 2, "l_m": 1, "l_n": 3}
        assert out["l_icnoma"] == 3
        assert out["transmissions_saved_vs_single_code"] == 3


class TestExitCodes:
    def test_missing_scenario_is_validation_error(self, capsys):
        assert cli.main(["run", "/nonexistent/file.json"]) == cli.EXIT_VALIDATION

    def test_bad_profile_is_validation_error(self, capsys):
        assert cli.main(["run", CONVOY6, "--profile", "0.5,0.3,0.2,0.2"]) == cli.EXIT_VALIDATION

    def test_capability_exceeded(self, tmp_path, capsys):
        doc = {
            "n": 12,
            "users": [
                {"demands": [1, 2], "cache": [3], "gain": 10.0},
                {"demands": [3], "cache": [1], "gain": 5.0},
                {"demands": [4], "cache": [2], "gain": 1.0},
            ],
        }
        path = tmp_path / "wide.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["solve", str(path)]) == cli.EXIT_CAPABILITY
        assert cli.main(["solve", str(path), "--solver", "greedy"]) == 0

    def test_property_failure_exit_code(self, monkeypatch, capsys):
        failing = PropertyOutcome("rigged", trials=1, violations=["boom"])
        monkeypatch.setattr(cli, "check_case_totality", lambda: failing)
        assert cli.main(["property-check", "--suite", "cases"]) == cli.EXIT_PROPERTY

    def test_property_success_exit_code(self, capsys):
        assert cli.main(["property-check", "--suite", "cases"]) == 0
        out = capsys.readouterr().out
        assert "case-totality" in out and "pass" in out


class TestPropertyCheckCommand:
    def test_small_bound_suite(self, capsys):
        rc = cli.main(["property-check", "--suite", "single-code-bound", "--trials", "10"])
        assert rc == 0
        assert "staged-vs-single-code-bound" in capsys.readouterr().out
