# Standard
from typing import Optional, Tuple

# Third Party
import numpy as np

_MASK64 = (1 << 64) - 1

# side streams; their spawn keys span at least three 32-bit words, a derive_rng key at most two
_SIDE_BRANCH = 0x51DE
CLUSTER_STREAM = 1
INSTANCE_STREAM = 2


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SeededRng:
    """Reproducible random source keyed by (seed, stream_id)

    Draws come from numpy's counter-based Philox generator, whose output for a given key is
    fixed across platforms and numpy versions. A SeededRng holds mutable generator state and
    must not be shared between threads; derive a substream per worker instead.
    `branch` extends the Philox spawn key, so streams on different branches never coincide.
    """

    def __init__(self, seed: int, stream_id: int = 0, branch: Tuple[int, ...] = ()) -> None:
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if not 0 <= stream_id <= _MASK64:
            raise ValueError(f"stream_id must be a 64-bit unsigned integer, got {stream_id}")
        self._seed = seed
        self._stream_id = stream_id
        self._branch = tuple(branch)
        self._gen: Optional[np.random.Generator] = None

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def stream_id(self) -> int:
        return self._stream_id

    @property
    def branch(self) -> Tuple[int, ...]:
        return self._branch

    @property
    def gen(self) -> np.random.Generator:
        if self._gen is None:
            seq = np.random.SeedSequence(entropy=self._seed, spawn_key=(self._stream_id,) + self._branch)
            self._gen = np.random.Generator(np.random.Philox(seq))
        return self._gen

    def random(self) -> float:
        return float(self.gen.random())

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high)"""
        return int(self.gen.integers(low, high))

    def __repr__(self) -> str:
        return f"SeededRng(seed={self._seed}, stream_id={self._stream_id}, branch={self._branch})"


def derive_rng(master: SeededRng, stream_id: int) -> SeededRng:
    """Independent substream of `master`, a pure function of (seed, master stream, stream_id)"""
    if stream_id < 0:
        raise ValueError(f"stream_id must be nonnegative, got {stream_id}")
    mixed = _splitmix64((_splitmix64(master.stream_id) + (stream_id & _MASK64) + 1) & _MASK64)
    return SeededRng(master.seed, mixed, master.branch)


def side_rng(master: SeededRng, purpose: int) -> SeededRng:
    """Stream for work outside the per-ant and per-individual numbering, such as clustering

    Disjoint from every stream derive_rng can produce from `master`, whatever the stream id.
    """
    if purpose < 0:
        raise ValueError(f"purpose must be nonnegative, got {purpose}")
    return SeededRng(master.seed, master.stream_id, master.branch + (_SIDE_BRANCH, purpose))
