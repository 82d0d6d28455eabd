import logging
import time
import zlib

import numpy as np

from seqrx import settings

logger = logging.getLogger(__name__)


def purpose_key(purpose: str) -> int:
    """
    Map a purpose tag to a stable 32-bit integer.

    Python's hash() is salted per process, so crc32 is used instead.
    """
    return zlib.crc32(purpose.encode("utf-8"))


def seed_sequence(seed: int, purpose: str, *indices: int) -> np.random.SeedSequence:
    """
    Build the SeedSequence for a (master seed, purpose, indices) triple.

    Args:
        seed: The master seed. Any non-negative integer.
        purpose: What the stream is used for, e.g. "codebook" or "trial".
        *indices: Further integers that distinguish sibling streams, such as a
            trial index or a sweep point index.

    Returns:
        np.random.SeedSequence: The derived seed sequence.
    """
    if seed < 0:
        raise ValueError(f"Seeds must be non-negative, got {seed}.")
    return np.random.SeedSequence(
        entropy=seed, spawn_key=(purpose_key(purpose), *map(int, indices))
    )


def derive_rng(seed: int, purpose: str, *indices: int) -> np.random.Generator:
    """
    Create a counter-based random generator for a derived stream.

    Every stream is a pure function of its arguments, so results never depend on
    the order in which streams are consumed. The algorithm is recorded as
    settings.rng_id.
    """
    return np.random.Generator(np.random.Philox(seed_sequence(seed, purpose, *indices)))


def derive_seed(seed: int, purpose: str, *indices: int) -> int:
    """Derive a 64-bit child seed from a master seed."""
    state = seed_sequence(seed, purpose, *indices).generate_state(1, dtype=np.uint64)
    return int(state[0])


def as_rng(rng: np.random.Generator | int | None) -> np.random.Generator:
    """Coerce a seed (or None) into a Generator on the seqrx stream."""
    if isinstance(rng, np.random.Generator):
        return rng
    return derive_rng(settings.default_seed if rng is None else rng, "adhoc")


def is_hermitian(matrix: np.ndarray, tolerance: float) -> bool:
    """Whether a square matrix equals its conjugate transpose within tolerance."""
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tolerance)


def frozen(array: np.ndarray) -> np.ndarray:
    """Return the array with writes disabled."""
    array.setflags(write=False)
    return array


class Timer:
    """
    Context manager to time a task.

    Attributes:
        duration: Seconds spent inside the block. Set on exit.
    """

    def __init__(self, task_name="", logger: logging.Logger = None, round_to=3):
        """
        Initialize the Timer.

        Args:
            task_name: The name of the task to log.
            logger: The logger to log the time to. Nothing is logged if None.
            round_to: The number of decimal places to round the time to.
        """
        self.logger = logger
        self.task_name = task_name
        self.round_to = round_to
        self.start = None
        self.duration = 0.0

    @property
    def milliseconds(self) -> float:
        return self.duration * 1000.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *args):
        self.duration = time.perf_counter() - self.start
        if self.logger is not None:
            self.logger.debug(
                "%s took %ss.", self.task_name, round(self.duration, self.round_to)
            )
