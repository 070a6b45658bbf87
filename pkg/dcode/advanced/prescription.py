# Standard
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple
import csv
import math
import operator
import re

# Local
from dcode.utils import dcode_logger, handle_arg_string

OBJECTIVE_COLUMN = "f"

_OPS: Dict[str, Callable[[Any, Any], bool]] = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
    "!=": operator.ne,
}
_ORDERING_OPS = ("<", "<=", ">", ">=")
_CONSTRAINT_PATTERN = re.compile(r"^\s*([A-Za-z_][\w.]*)\s*(<=|>=|==|!=|<|>|=)\s*(.+?)\s*$")


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


@dataclass(frozen=True)
class Constraint:
    """A predicate `feature op value`; values that are not numbers compare as strings"""

    feature: str
    op: str
    value: Any

    def __post_init__(self) -> None:
        if self.op not in _OPS:
            raise ValueError(f"Unsupported operator '{self.op}', use one of {', '.join(_OPS)}")

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        match = _CONSTRAINT_PATTERN.match(text)
        if match is None:
            raise ValueError(
                f"Cannot parse constraint '{text}', expected '<feature><op><value>' with op in {', '.join(_OPS)}"
            )
        feature, op, raw = match.groups()
        return cls(feature, "==" if op == "=" else op, handle_arg_string(raw))

    def satisfied_by(self, x: Mapping[str, Any]) -> bool:
        if self.feature not in x:
            raise ValueError(f"Constraint on unknown feature '{self.feature}'")
        left, right = x[self.feature], self.value
        if _is_number(left) and _is_number(right):
            return _OPS[self.op](left, right)
        if self.op in _ORDERING_OPS:
            raise ValueError(
                f"Ordering constraint '{self}' applied to categorical value {left!r}"
            )
        return _OPS[self.op](str(left), str(right))

    def __str__(self) -> str:
        return f"{self.feature}{self.op}{self.value}"


@dataclass(frozen=True)
class PrescriptionDataset:
    """Candidate records (x, f) sharing one feature schema, and the constraints they must meet"""

    records: Tuple[Tuple[Mapping[str, Any], float], ...]
    constraints: Tuple[Constraint, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        schema = None
        for idx, (x, f) in enumerate(self.records):
            if schema is None:
                schema = set(x)
            elif set(x) != schema:
                raise ValueError(f"Record {idx} does not share the feature schema {sorted(schema)}")
            if not _is_number(f) or math.isnan(f):
                raise ValueError(f"Record {idx} has a non-numeric objective {f!r}")
        if schema is not None:
            for c in self.constraints:
                if c.feature not in schema:
                    raise ValueError(
                        f"Constraint '{c}' names unknown feature; features are {', '.join(sorted(schema))}"
                    )

    @property
    def features(self) -> List[str]:
        return list(self.records[0][0]) if self.records else []

    @classmethod
    def from_csv(cls, path: str, constraints: Sequence[Constraint] = ()) -> "PrescriptionDataset":
        """Reads a header-row CSV; the objective column is named `f`, every other column is a feature"""
        with open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or OBJECTIVE_COLUMN not in reader.fieldnames:
                raise ValueError(f"{path}: header must contain an objective column '{OBJECTIVE_COLUMN}'")
            records = []
            for line_number, row in enumerate(reader, start=2):
                if None in row or any(v is None for v in row.values()):
                    raise ValueError(f"{path}:{line_number}: row does not match the header")
                objective = handle_arg_string(row.pop(OBJECTIVE_COLUMN))
                if not _is_number(objective):
                    raise ValueError(f"{path}:{line_number}: objective '{objective}' is not a number")
                records.append(({k: handle_arg_string(v) for k, v in row.items()}, float(objective)))
        return cls(tuple(records), tuple(constraints))


@dataclass(frozen=True)
class Prescription:
    feasible: bool
    index: Optional[int] = None
    x: Optional[Mapping[str, Any]] = None
    f: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"feasible": self.feasible, "index": self.index, "x": dict(self.x or {}), "f": self.f}


def olp_prescribe(ds: PrescriptionDataset) -> Prescription:
    """Lowest-objective record satisfying every constraint; ties go to the lowest index"""
    best: Optional[int] = None
    for idx, (x, f) in enumerate(ds.records):
        if all(c.satisfied_by(x) for c in ds.constraints) and (best is None or f < ds.records[best][1]):
            best = idx
    if best is None:
        dcode_logger.info("No record satisfies %s", ", ".join(str(c) for c in ds.constraints))
        return Prescription(feasible=False)
    x, f = ds.records[best]
    return Prescription(feasible=True, index=best, x=x, f=f)
