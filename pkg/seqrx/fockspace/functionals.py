import logging

import numpy as np

from seqrx import settings
from seqrx.errors import DimensionMismatch, InvalidParams
from seqrx.fockspace.states import DensityMatrix, clipped_spectrum

logger = logging.getLogger(__name__)


def entropy(rho: DensityMatrix) -> float:
    """
    The von Neumann entropy in bits.

    Eigenvalues below settings.entropy_floor contribute nothing.
    """
    eigenvalues = rho.eigenvalues()
    eigenvalues = eigenvalues[eigenvalues >= settings.entropy_floor]
    return float(max(0.0, -np.sum(eigenvalues * np.log2(eigenvalues))))


def trace_norm(hermitian: np.ndarray) -> float:
    """The sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(np.linalg.eigvalsh(hermitian))))


def _entries(state: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(state, DensityMatrix):
        return state.entries
    return np.asarray(state, dtype=complex)


def trace_distance(rho: DensityMatrix | np.ndarray, sigma: DensityMatrix | np.ndarray) -> float:
    """
    Tr|rho - sigma|, in [0, 2].

    This is the unnormalized trace distance, so orthogonal pure states sit at 2.
    Plain arrays are accepted for subnormalized operators.

    Raises:
        DimensionMismatch: If the operands differ in shape.
    """
    rho, sigma = _entries(rho), _entries(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(
            f"Cannot compare operators of shapes {rho.shape} and {sigma.shape}."
        )
    difference = rho - sigma
    return trace_norm((difference + difference.conj().T) / 2)


def partial_trace(rho: DensityMatrix, keep: tuple[int, ...]) -> DensityMatrix:
    """
    Trace out every mode not listed in keep.

    Args:
        rho: A multimode density matrix.
        keep: The modes to keep, in the order they should appear.

    Returns:
        DensityMatrix: The reduced state on the kept modes.
    """
    keep = tuple(keep)
    if not keep or len(set(keep)) != len(keep) or max(keep) >= rho.modes:
        raise InvalidParams(f"Cannot keep modes {keep} of a {rho.modes}-mode state.")

    d, modes = rho.cutoff.d, rho.modes
    traced = [mode for mode in range(modes) if mode not in keep]
    tensor = rho.entries.reshape((d,) * (2 * modes))

    # Row indices are 0..modes-1, column indices modes..2*modes-1.
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = list(letters[:modes])
    columns = list(letters[modes : 2 * modes])
    for mode in traced:
        columns[mode] = rows[mode]
    output = "".join(rows[mode] for mode in keep) + "".join(columns[mode] for mode in keep)
    reduced = np.einsum(f"{''.join(rows)}{''.join(columns)}->{output}", tensor)

    size = d ** len(keep)
    return DensityMatrix(modes=len(keep), cutoff=rho.cutoff, entries=reduced.reshape(size, size))
