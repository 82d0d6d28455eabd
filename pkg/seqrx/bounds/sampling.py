import logging

import numpy as np
from scipy.stats import unitary_group

logger = logging.getLogger(__name__)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A Haar-random unitary."""
    return unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.array([[1.0 + 0j]])


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A Haar-random unit vector."""
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vector / np.linalg.norm(vector)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """
    A random mixed state G G^dag / Tr, with G a complex Ginibre matrix.

    Args:
        dim: Hilbert space dimension.
        rng: Randomness.
        rank: Rank of the state. Full rank by default.
    """
    rank = dim if rank is None else rank
    ginibre = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    state = ginibre @ ginibre.conj().T
    return state / np.trace(state).real


def random_projector(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """
    The projector onto a Haar-random subspace.

    The rank is drawn uniformly from 1..dim unless given.
    """
    rank = int(rng.integers(1, dim + 1)) if rank is None else rank
    basis = random_unitary(dim, rng)[:, :rank]
    return basis @ basis.conj().T


def random_effect(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A random operator 0 <= L <= I: Haar-random eigenbasis, uniform eigenvalues."""
    basis = random_unitary(dim, rng)
    return (basis * rng.uniform(0.0, 1.0, dim)) @ basis.conj().T
