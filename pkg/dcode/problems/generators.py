# Third Party
import numpy as np

# Local
from dcode.problems.core import TspInstance
from dcode.problems.rng import SeededRng


def random_euclidean_instance(
    n: int, rng: SeededRng, side: float = 1000.0, name: str = None
) -> TspInstance:
    """Uniform random cities in a square, with TSPLIB-rounded Euclidean distances"""
    coords = rng.gen.uniform(0.0, side, size=(n, 2))
    return TspInstance.from_coordinates(name or f"rand{n}", coords, round_distances=True)
