# Standard
import os

# Third Party
import numpy as np
import pytest

# Local
from dcode.problems.core import tour_cost
from dcode.problems.tsplib import TsplibParseError, load_best_known, load_tsplib

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "data")

# published optimal tours, 1-based city ids
OPTIMAL_TOURS = {
    "eil51": "1 22 8 26 31 28 3 36 35 20 2 29 21 16 50 34 30 9 49 10 39 33 45 15 44 42 40 19 41 13 25 14 24 43 7 23 48 6 27 51 46 12 47 18 4 17 37 5 38 11 32",
    "berlin52": "1 49 32 45 19 41 8 9 10 43 33 51 11 52 14 13 47 26 27 28 12 25 4 6 15 5 24 48 38 37 40 39 36 35 34 44 46 16 29 50 20 23 30 2 7 42 21 17 3 18 31 22",
    "kroA100": "1 47 93 28 67 58 61 51 87 25 81 69 64 40 54 2 44 50 73 68 85 82 95 13 76 33 37 5 52 78 96 39 30 48 100 41 71 14 3 43 46 29 34 83 55 7 9 57 20 12 27 86 35 62 60 77 23 98 91 45 32 11 15 17 59 74 21 72 10 84 36 99 38 24 18 79 53 88 16 94 22 70 66 26 65 4 97 56 80 31 89 42 8 92 75 19 90 49 6 63",
}

HEADER = "NAME: bad\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\n"


def write(tmp_path, text, name="bad.tsp"):
    path = os.path.join(tmp_path, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    return path


class TestLoadTsplib:
    def test_euc_2d(self, fixtures_dir):
        instance = load_tsplib(os.path.join(fixtures_dir, "tri345.tsp"))
        assert instance.name == "tri345"
        assert instance.n == 3
        assert np.array_equal(instance.coords, [[0, 0], [3, 0], [0, 4]])
        assert instance.best_known is None

    def test_explicit_full_matrix(self, fixtures_dir):
        instance = load_tsplib(os.path.join(fixtures_dir, "square4.tsp"))
        assert instance.n == 4
        assert instance.coords is None
        assert instance.distances[0, 2] == 2

    def test_best_known_attached(self, fixtures_dir):
        instance = load_tsplib(
            os.path.join(fixtures_dir, "tri345.tsp"), os.path.join(fixtures_dir, "best_known.csv")
        )
        assert instance.best_known == 12

    def test_missing_file(self, tmp_path):
        path = os.path.join(tmp_path, "nowhere.tsp")
        with pytest.raises(FileNotFoundError, match="nowhere.tsp"):
            load_tsplib(path)

    def test_bad_coordinate_reports_line(self, tmp_path):
        path = write(tmp_path, HEADER + "NODE_COORD_SECTION\n1 0 0\n2 3 abc\n3 0 4\nEOF\n")
        with pytest.raises(TsplibParseError) as exc:
            load_tsplib(path)
        assert exc.value.line_number == 7
        assert "abc" in str(exc.value)

    def test_missing_coordinates(self, tmp_path):
        path = write(tmp_path, HEADER + "NODE_COORD_SECTION\n1 0 0\n2 3 0\nEOF\n")
        with pytest.raises(TsplibParseError, match="expected 3 node coordinates"):
            load_tsplib(path)

    @pytest.mark.parametrize(
        "text,message",
        [
            ("NAME: x\nTYPE: ATSP\nDIMENSION: 3\n", "only TSP"),
            ("NAME: x\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n", "EDGE_WEIGHT_TYPE"),
            ("NAME: x\nTYPE: TSP\nDIMENSION: 2\n", "too small"),
            ("NAME: x\nTYPE: TSP\nNODE_COORD_SECTION\n1 0 0\n", "before DIMENSION"),
            ("NAME: x\nTYPE: TSP\nEDGE_WEIGHT_TYPE: EUC_2D\n", "missing DIMENSION"),
        ],
    )
    def test_rejects_unsupported_headers(self, tmp_path, text, message):
        with pytest.raises(TsplibParseError, match=message):
            load_tsplib(write(tmp_path, text))

    def test_explicit_matrix_size(self, tmp_path):
        text = (
            "NAME: m\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
            "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1 2\n1 0 3\nEOF\n"
        )
        with pytest.raises(TsplibParseError, match="expected 9 edge weights"):
            load_tsplib(write(tmp_path, text))


class TestLoadBestKnown:
    def test_reads_rows(self, fixtures_dir):
        assert load_best_known(os.path.join(fixtures_dir, "best_known.csv")) == {
            "tri345": 12.0,
            "square4": 4.0,
        }

    def test_bad_row(self, tmp_path):
        path = write(tmp_path, "eil51,426\nberlin52\n", name="best.csv")
        with pytest.raises(TsplibParseError) as exc:
            load_best_known(path)
        assert exc.value.line_number == 2


class TestPackagedInstances:
    @pytest.mark.parametrize("name, n", [("eil51", 51), ("berlin52", 52), ("kroA100", 100)])
    def test_optimal_tour_costs_best_known(self, name, n):
        instance = load_tsplib(
            os.path.join(DATA_DIR, "tsplib", f"{name}.tsp"), os.path.join(DATA_DIR, "best_known.csv")
        )
        assert instance.name == name
        assert instance.n == n
        order = [int(city) - 1 for city in OPTIMAL_TOURS[name].split()]
        assert tour_cost(instance, order) == instance.best_known
