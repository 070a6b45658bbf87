# Local
from dcode.problems.core import (
    ContinuousProblem,
    Tour,
    TspInstance,
    make_tour,
    nearest_neighbor_tour,
    tour_cost,
)
from dcode.problems.rng import SeededRng, derive_rng, side_rng
from dcode.problems.tsplib import TsplibParseError, load_best_known, load_tsplib
