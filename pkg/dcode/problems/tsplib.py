"""Reader for the TSPLIB text format (symmetric TSP, EUC_2D and EXPLICIT/FULL_MATRIX)."""

# Standard
from typing import Dict, List, Optional, Tuple
import csv
import os

# Third Party
import numpy as np

# Local
from dcode.problems.core import MIN_CITIES, TspInstance
from dcode.utils import dcode_logger

SUPPORTED_EDGE_WEIGHT_TYPES = ("EUC_2D", "EXPLICIT")
SUPPORTED_EDGE_WEIGHT_FORMATS = ("FULL_MATRIX",)

_NODE_COORD_SECTION = "NODE_COORD_SECTION"
_EDGE_WEIGHT_SECTION = "EDGE_WEIGHT_SECTION"
_SKIPPED_SECTIONS = ("DISPLAY_DATA_SECTION", "TOUR_SECTION", "FIXED_EDGES_SECTION")


class TsplibParseError(ValueError):
    def __init__(self, path: str, line_number: Optional[int], message: str) -> None:
        self.path = path
        self.line_number = line_number
        where = f"{path}:{line_number}" if line_number is not None else path
        super().__init__(f"{where}: {message}")


def _split_header(line: str) -> Tuple[str, str]:
    if ":" in line:
        key, value = line.split(":", 1)
        return key.strip().upper(), value.strip()
    return line.strip().upper(), ""


def _parse_number(path: str, line_number: int, token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise TsplibParseError(path, line_number, f"expected a number, got '{token}'")


def load_tsplib(path: str, best_known_path: Optional[str] = None) -> TspInstance:
    """Parses a TSPLIB file into a TspInstance

    EUC_2D distances are rounded to the nearest integer, as TSPLIB's published optima assume.
    When `best_known_path` points to a `name,cost` CSV, the matching optimum is attached.
    """
    if not os.path.isfile(path):
        raise FileNotFoundError(f"TSPLIB file not found: {path}")

    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()

    header: Dict[str, str] = {}
    coords: Dict[int, Tuple[float, float]] = {}
    weights: List[float] = []
    weights_line = None
    section = None
    dimension = None

    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.upper() == "EOF":
            break

        first = line.split()[0].rstrip(":").upper()
        if first in (_NODE_COORD_SECTION, _EDGE_WEIGHT_SECTION) or first in _SKIPPED_SECTIONS:
            section = first
            if dimension is None:
                raise TsplibParseError(path, line_number, f"{first} appears before DIMENSION")
            if first == _EDGE_WEIGHT_SECTION:
                weights_line = line_number
            continue

        if section is None or (":" in line and not line[0].isdigit() and line[0] not in "-+."):
            key, value = _split_header(line)
            section = None
            header[key] = value
            if key == "TYPE" and value.upper() != "TSP":
                raise TsplibParseError(
                    path, line_number, f"unsupported problem TYPE '{value}', only TSP is supported"
                )
            if key == "DIMENSION":
                try:
                    dimension = int(value)
                except ValueError:
                    raise TsplibParseError(path, line_number, f"invalid DIMENSION '{value}'")
                if dimension < MIN_CITIES:
                    raise TsplibParseError(
                        path,
                        line_number,
                        f"DIMENSION {dimension} is too small, at least {MIN_CITIES} cities required",
                    )
            if key == "EDGE_WEIGHT_TYPE" and value.upper() not in SUPPORTED_EDGE_WEIGHT_TYPES:
                raise TsplibParseError(
                    path,
                    line_number,
                    f"unsupported EDGE_WEIGHT_TYPE '{value}', supported: {', '.join(SUPPORTED_EDGE_WEIGHT_TYPES)}",
                )
            if key == "EDGE_WEIGHT_FORMAT" and value.upper() not in SUPPORTED_EDGE_WEIGHT_FORMATS:
                raise TsplibParseError(
                    path,
                    line_number,
                    f"unsupported EDGE_WEIGHT_FORMAT '{value}', supported: {', '.join(SUPPORTED_EDGE_WEIGHT_FORMATS)}",
                )
            continue

        if section == _NODE_COORD_SECTION:
            tokens = line.split()
            if len(tokens) != 3:
                raise TsplibParseError(
                    path, line_number, f"expected '<id> <x> <y>', got '{line}'"
                )
            node = int(_parse_number(path, line_number, tokens[0]))
            if not 1 <= node <= dimension:
                raise TsplibParseError(path, line_number, f"node id {node} outside 1..{dimension}")
            if node in coords:
                raise TsplibParseError(path, line_number, f"duplicate node id {node}")
            coords[node] = (
                _parse_number(path, line_number, tokens[1]),
                _parse_number(path, line_number, tokens[2]),
            )
        elif section == _EDGE_WEIGHT_SECTION:
            weights.extend(_parse_number(path, line_number, tok) for tok in line.split())

    if dimension is None:
        raise TsplibParseError(path, None, "missing DIMENSION")
    if "TYPE" not in header:
        raise TsplibParseError(path, None, "missing TYPE")
    edge_weight_type = header.get("EDGE_WEIGHT_TYPE", "").upper()
    if not edge_weight_type:
        raise TsplibParseError(path, None, "missing EDGE_WEIGHT_TYPE")

    name = header.get("NAME") or os.path.splitext(os.path.basename(path))[0]

    if edge_weight_type == "EUC_2D":
        if len(coords) != dimension:
            raise TsplibParseError(
                path, None, f"expected {dimension} node coordinates, found {len(coords)}"
            )
        points = [coords[i] for i in range(1, dimension + 1)]
        instance = TspInstance.from_coordinates(name, points, round_distances=True)
    else:
        edge_weight_format = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if edge_weight_format != "FULL_MATRIX":
            raise TsplibParseError(
                path, None, "EXPLICIT edge weights require EDGE_WEIGHT_FORMAT: FULL_MATRIX"
            )
        if len(weights) != dimension * dimension:
            raise TsplibParseError(
                path,
                weights_line,
                f"expected {dimension * dimension} edge weights, found {len(weights)}",
            )
        try:
            instance = TspInstance.from_matrix(
                name, np.array(weights).reshape(dimension, dimension)
            )
        except ValueError as e:
            raise TsplibParseError(path, weights_line, str(e))

    if best_known_path is not None:
        best_known = load_best_known(best_known_path)
        if name in best_known:
            instance = instance.with_best_known(best_known[name])
        else:
            dcode_logger.warning("No best-known cost for %s in %s", name, best_known_path)

    dcode_logger.debug("Loaded %s with %s cities from %s", name, instance.n, path)
    return instance


def load_best_known(path: str) -> Dict[str, float]:
    """Reads `name,cost` rows; a leading `name,cost` header row is allowed"""
    if not os.path.isfile(path):
        raise FileNotFoundError(f"best-known file not found: {path}")
    best_known = {}
    with open(path, "r", encoding="utf-8", newline="") as f:
        for line_number, row in enumerate(csv.reader(f), start=1):
            if not row or row[0].strip().startswith("#"):
                continue
            if len(row) != 2:
                raise TsplibParseError(path, line_number, f"expected 'name,cost', got {row}")
            name, cost = row[0].strip(), row[1].strip()
            if line_number == 1 and name.lower() == "name":
                continue
            best_known[name] = _parse_number(path, line_number, cost)
    return best_known
