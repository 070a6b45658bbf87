# Standard
import csv
import json
import os

# Third Party
import pytest

# Local
from dcode.__main__ import (
    EXIT_INFEASIBLE,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_RUNTIME,
    EXIT_USAGE,
    main,
)

TESTS_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES_DIR = os.path.join(TESTS_DIR, "fixtures")
TRIANGLE = os.path.join(FIXTURES_DIR, "tri345.tsp")
SQUARE = os.path.join(FIXTURES_DIR, "square4.tsp")
BEST_KNOWN = os.path.join(FIXTURES_DIR, "best_known.csv")
RECORDS = os.path.join(FIXTURES_DIR, "prescription.csv")


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f)
    return str(path)


def read_bytes(directory):
    """Every file under `directory`, keyed by its relative path"""
    out = {}
    for root, _, files in os.walk(directory):
        for name in files:
            path = os.path.join(root, name)
            with open(path, "rb") as f:
                out[os.path.relpath(path, directory)] = f.read()
    return out


@pytest.fixture
def small_config(tmp_path):
    return write_json(tmp_path / "config.json", {"colony": {"m": 5, "max_iterations": 20}})


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == EXIT_USAGE
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self):
        assert main(["solve", "--instance", TRIANGLE, "--bogus"]) == EXIT_USAGE

    def test_missing_required_flag(self):
        assert main(["prescribe"]) == EXIT_USAGE

    def test_exclusive_policies(self):
        assert main(["simulate", "--scenario", "emergency", "--static-only", "--de-only"]) == EXIT_USAGE

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "solve" in capsys.readouterr().out


class TestSolve:
    def test_triangle(self, tmp_path, capsys, small_config):
        out = str(tmp_path / "solve")
        code = main(
            ["solve", "--instance", TRIANGLE, "--config", small_config, "--best-known", BEST_KNOWN, "--output-dir", out]
        )
        assert code == EXIT_OK
        stdout = capsys.readouterr().out
        assert "best cost: 12" in stdout
        assert "SQ: 100.00" in stdout
        assert sorted(os.listdir(out)) == ["effective_config.json", "record.csv", "summary.json"]

        with open(os.path.join(out, "summary.json"), encoding="utf-8") as f:
            summary = json.load(f)
        assert summary["best_cost"] == 12.0
        assert sorted(summary["best_tour"]) == [0, 1, 2]
        assert summary["evaluations"] > 0

        with open(os.path.join(out, "record.csv"), encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["iteration", "best_cost", "rho", "m"]
        assert len(rows) == 21

        with open(os.path.join(out, "effective_config.json"), encoding="utf-8") as f:
            effective = json.load(f)
        assert effective["config"]["colony"]["m"] == 5
        assert effective["args"]["seed"] == 0

    def test_same_seed_same_bytes(self, tmp_path, small_config):
        out = str(tmp_path / "solve")
        argv = ["solve", "--instance", SQUARE, "--config", small_config, "--seed", "7", "--output-dir", out]
        assert main(argv) == EXIT_OK
        first = read_bytes(out)
        assert main(argv + ["--threads", "2"]) == EXIT_OK
        assert read_bytes(out) == first

    def test_without_controller(self, tmp_path, capsys, small_config):
        out = str(tmp_path / "solve")
        assert main(["solve", "--instance", SQUARE, "--config", small_config, "--no-de", "--output-dir", out]) == EXIT_OK
        assert "best cost: 4" in capsys.readouterr().out
        with open(os.path.join(out, "record.csv"), encoding="utf-8") as f:
            rows = list(csv.reader(f))[1:]
        assert {row[2] for row in rows} == {"0.100000"}

    def test_missing_instance(self, tmp_path, capsys):
        missing = str(tmp_path / "nope.tsp")
        assert main(["solve", "--instance", missing, "--output-dir", str(tmp_path)]) == EXIT_INPUT
        assert missing in capsys.readouterr().err

    def test_invalid_config(self, tmp_path, capsys):
        config = write_json(tmp_path / "config.json", {"colony": {"rho": 2.0}})
        assert main(["solve", "--instance", TRIANGLE, "--config", config]) == EXIT_INPUT
        assert "colony.rho" in capsys.readouterr().err

    def test_zero_iterations_rejected(self, tmp_path, capsys):
        config = write_json(tmp_path / "config.json", {"colony": {"max_iterations": 0}})
        assert main(["solve", "--instance", TRIANGLE, "--config", config]) == EXIT_INPUT
        assert "colony.max_iterations" in capsys.readouterr().err

    def test_baseline_algorithm(self, tmp_path, capsys):
        config = write_json(tmp_path / "config.json", {"baseline": {"population": 6, "max_iterations": 10}})
        out = str(tmp_path / "solve")
        argv = ["solve", "--instance", TRIANGLE, "--config", config, "--algorithm", "ga_tsp"]
        assert main(argv + ["--best-known", BEST_KNOWN, "--output-dir", out]) == EXIT_OK
        stdout = capsys.readouterr().out
        assert "best cost: 12" in stdout
        assert "SQ: 100.00" in stdout

        with open(os.path.join(out, "summary.json"), encoding="utf-8") as f:
            summary = json.load(f)
        assert summary["algorithm"] == "ga_tsp"
        assert summary["iterations"] == 10
        with open(os.path.join(out, "record.csv"), encoding="utf-8") as f:
            rows = list(csv.reader(f))[1:]
        assert len(rows) == 10
        assert {row[2] for row in rows} == {""}
        with open(os.path.join(out, "effective_config.json"), encoding="utf-8") as f:
            baseline = json.load(f)["config"]["baseline"]
        assert baseline["algorithm_id"] == "ga_tsp"
        assert baseline["population"] == 6

    def test_baseline_same_seed_same_bytes(self, tmp_path):
        config = write_json(tmp_path / "config.json", {"baseline": {"population": 8, "max_iterations": 15}})
        out = str(tmp_path / "solve")
        argv = ["solve", "--instance", SQUARE, "--config", config, "--algorithm", "aco_classic"]
        assert main(argv + ["--seed", "5", "--output-dir", out]) == EXIT_OK
        first = read_bytes(out)
        assert main(argv + ["--seed", "5", "--output-dir", out]) == EXIT_OK
        assert read_bytes(out) == first

    @pytest.mark.parametrize(
        "algorithm, message", [("tgd", "does not solve TSP"), ("nope", "Unknown algorithm")]
    )
    def test_algorithm_must_solve_tsp(self, algorithm, message, tmp_path, capsys):
        argv = ["solve", "--instance", TRIANGLE, "--algorithm", algorithm, "--output-dir", str(tmp_path)]
        assert main(argv) == EXIT_INPUT
        assert message in capsys.readouterr().err

    def test_algorithm_excludes_colony_flags(self, tmp_path, capsys):
        argv = ["solve", "--instance", TRIANGLE, "--algorithm", "ga_tsp", "--no-de"]
        assert main(argv + ["--output-dir", str(tmp_path)]) == EXIT_INPUT
        assert "--no-de" in capsys.readouterr().err

    def test_clusters_need_coordinates(self, tmp_path, capsys, small_config):
        argv = ["solve", "--instance", SQUARE, "--config", small_config, "--clusters", "2"]
        assert main(argv + ["--output-dir", str(tmp_path)]) == EXIT_RUNTIME
        assert "no coordinates" in capsys.readouterr().err


class TestBench:
    @pytest.fixture
    def spec(self):
        return {
            "name": "tri",
            "problems": [{"kind": "tsplib", "path": TRIANGLE}],
            "algorithms": [
                {"label": "D-CODE", "colony": {"m": 5}},
                {"label": "ACO", "colony": {"m": 5}, "de_controller": {"enabled": False}},
            ],
            "seeds": [0, 1],
            "budget": 10,
            "best_known_csv": BEST_KNOWN,
        }

    def test_writes_report(self, tmp_path, capsys, spec):
        out = str(tmp_path / "bench")
        assert main(["bench", "--spec", write_json(tmp_path / "spec.json", spec), "--output-dir", out]) == EXIT_OK
        assert "relative_improvement" in capsys.readouterr().out
        with open(os.path.join(out, "table.csv"), encoding="utf-8") as f:
            assert "relative_improvement" in f.readline()
        assert os.path.exists(os.path.join(out, "effective_config.json"))

    def test_deterministic_apart_from_timing(self, tmp_path, spec):
        path = write_json(tmp_path / "spec.json", spec)
        seeds = []
        for run in ("a", "b"):
            out = str(tmp_path / run)
            assert main(["bench", "--spec", path, "--output-dir", out]) == EXIT_OK
            with open(os.path.join(out, "seeds.csv"), encoding="utf-8") as f:
                seeds.append([row[:-1] for row in csv.reader(f)])
        assert seeds[0] == seeds[1]

    def test_experiment_section_of_config(self, tmp_path, capsys, spec):
        out = str(tmp_path / "bench")
        config = write_json(tmp_path / "config.json", {"experiment": spec})
        assert main(["bench", "--config", config, "--output-dir", out]) == EXIT_OK
        assert "relative_improvement" in capsys.readouterr().out
        with open(os.path.join(out, "effective_config.json"), encoding="utf-8") as f:
            assert json.load(f)["config"]["name"] == "tri"

    def test_spec_wins_over_config(self, tmp_path, spec):
        out = str(tmp_path / "bench")
        config = write_json(tmp_path / "config.json", {"experiment": {**spec, "name": "from_config"}})
        path = write_json(tmp_path / "spec.json", spec)
        assert main(["bench", "--spec", path, "--config", config, "--output-dir", out]) == EXIT_OK
        with open(os.path.join(out, "effective_config.json"), encoding="utf-8") as f:
            assert json.load(f)["config"]["name"] == "tri"

    def test_needs_an_experiment(self, tmp_path, capsys):
        assert main(["bench", "--output-dir", str(tmp_path)]) == EXIT_INPUT
        assert "--spec" in capsys.readouterr().err
        config = write_json(tmp_path / "config.json", {"colony": {"m": 5}})
        assert main(["bench", "--config", config, "--output-dir", str(tmp_path)]) == EXIT_INPUT
        assert "no `experiment` section" in capsys.readouterr().err

    def test_empty_seeds(self, tmp_path, capsys, spec):
        spec["seeds"] = []
        path = write_json(tmp_path / "spec.json", spec)
        assert main(["bench", "--spec", path, "--output-dir", str(tmp_path)]) == EXIT_INPUT
        assert "seeds" in capsys.readouterr().err


class TestSimulate:
    def test_gain(self, tmp_path, capsys):
        out = str(tmp_path / "sim")
        assert main(["simulate", "--scenario", "high_demand", "--seed", "1", "--output-dir", out]) == EXIT_OK
        assert "gain" in capsys.readouterr().out
        with open(os.path.join(out, "summary.json"), encoding="utf-8") as f:
            summary = json.load(f)
        row = summary["scenarios"][0]
        assert row["after"] > row["before"]
        assert row["gain"] > 0
        assert sorted(os.listdir(os.path.join(out, "high_demand"))) == ["trace_de_adaptive.csv", "trace_static.csv"]

    def test_several_scenarios(self, tmp_path, capsys):
        argv = ["simulate", "--scenario", "high_demand", "emergency", "scalability", "--horizon", "60"]
        assert main(argv + ["--output-dir", str(tmp_path)]) == EXIT_OK
        assert "mean gain" in capsys.readouterr().out

    def test_static_only(self, tmp_path):
        out = str(tmp_path / "sim")
        assert main(["simulate", "--scenario", "emergency", "--static-only", "--output-dir", out]) == EXIT_OK
        with open(os.path.join(out, "summary.json"), encoding="utf-8") as f:
            summary = json.load(f)
        assert "gain" not in summary["scenarios"][0]
        assert "mean_gain" not in summary
        assert os.listdir(os.path.join(out, "emergency")) == ["trace_static.csv"]

    def test_unknown_scenario(self, tmp_path, capsys):
        assert main(["simulate", "--scenario", "flood", "--output-dir", str(tmp_path)]) == EXIT_INPUT
        err = capsys.readouterr().err
        for name in ("emergency", "high_demand", "scalability"):
            assert name in err

    def test_horizon_too_short(self, tmp_path):
        argv = ["simulate", "--scenario", "emergency", "--horizon", "5", "--output-dir", str(tmp_path)]
        assert main(argv) == EXIT_INPUT

    def test_same_seed_same_bytes(self, tmp_path):
        out = str(tmp_path / "sim")
        argv = ["simulate", "--scenario", "scalability", "--seed", "3", "--output-dir", out]
        assert main(argv) == EXIT_OK
        first = read_bytes(out)
        assert main(argv) == EXIT_OK
        assert read_bytes(out) == first


class TestPrescribe:
    def test_feasible(self, capsys):
        assert main(["prescribe", "--data", RECORDS, "--constraint", "x>=2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "record 1: x=2, region=south" in out
        assert "f: 5" in out

    def test_no_constraints(self, capsys):
        assert main(["prescribe", "--data", RECORDS]) == EXIT_OK
        assert "record 0: x=1, region=north" in capsys.readouterr().out

    def test_infeasible(self, tmp_path, capsys):
        argv = ["prescribe", "--data", RECORDS, "--constraint", "x>2", "--constraint", "x<2"]
        assert main(argv + ["--output-dir", str(tmp_path)]) == EXIT_INFEASIBLE
        assert "infeasible" in capsys.readouterr().out
        with open(os.path.join(tmp_path, "prescription.json"), encoding="utf-8") as f:
            assert json.load(f)["feasible"] is False

    def test_writes_prescription(self, tmp_path):
        argv = ["prescribe", "--data", RECORDS, "--constraint", "region==north", "--output-dir", str(tmp_path)]
        assert main(argv) == EXIT_OK
        first = read_bytes(str(tmp_path))
        with open(os.path.join(tmp_path, "prescription.json"), encoding="utf-8") as f:
            assert json.load(f) == {"feasible": True, "index": 0, "x": {"x": 1, "region": "north"}, "f": 1.0}
        assert main(argv) == EXIT_OK
        assert read_bytes(str(tmp_path)) == first

    @pytest.mark.parametrize("constraint", ["x ~ 2", "z>1"])
    def test_bad_constraint(self, constraint, capsys):
        assert main(["prescribe", "--data", RECORDS, "--constraint", constraint]) == EXIT_INPUT
        assert "dcode: error" in capsys.readouterr().err

    def test_missing_data(self, tmp_path):
        assert main(["prescribe", "--data", str(tmp_path / "none.csv")]) == EXIT_INPUT
