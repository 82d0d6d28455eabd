import logging
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from seqrx import settings
from seqrx.errors import DimensionMismatch, InvalidState
from seqrx.fockspace.cutoff import FockCutoff
from seqrx.utils import frozen, is_hermitian

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True, eq=False)
class TruncatedState:
    """
    A pure state on a multimode truncated Fock space.

    Amplitudes are stored flat in row-major order, so mode 0 is the most
    significant index: the amplitude of |n_0, n_1, ...> sits at
    n_0 * d^(modes-1) + n_1 * d^(modes-2) + ...

    Attributes:
        modes: The number of modes.
        cutoff: The per-mode cutoff.
        amplitudes: Complex vector of length d**modes. Read-only.

    Methods:
        vacuum: The all-modes vacuum state.
        norm: The Euclidean norm of the amplitudes.
        normalized: A copy scaled to unit norm.
        inner: The inner product <self|other>.
        tensor: The tensor product self (x) other.
        to_density_matrix: The projector |self><self|.
        mean_photon_number: The mean occupation of one mode.
    """

    modes: int
    cutoff: FockCutoff
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.modes < 1:
            raise ValueError(f"A state needs at least one mode, got {self.modes}.")
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != self.cutoff.dimension(self.modes):
            raise DimensionMismatch(
                f"{self.modes} modes at d={self.cutoff.d} need "
                f"{self.cutoff.dimension(self.modes)} amplitudes, got {amplitudes.size}."
            )
        object.__setattr__(self, "amplitudes", frozen(amplitudes))

    @classmethod
    def vacuum(cls, modes: int, cutoff: FockCutoff) -> "TruncatedState":
        amplitudes = np.zeros(cutoff.dimension(modes), dtype=complex)
        amplitudes[0] = 1.0
        return cls(modes=modes, cutoff=cutoff, amplitudes=amplitudes)

    @property
    def dimension(self) -> int:
        return self.amplitudes.size

    def tensor_view(self) -> np.ndarray:
        """The amplitudes reshaped to one axis per mode."""
        return self.amplitudes.reshape((self.cutoff.d,) * self.modes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tolerance: float = settings.normalization_tolerance) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tolerance

    def normalized(self) -> "TruncatedState":
        """
        Scale to unit norm.

        Raises:
            InvalidState: If the state is the zero vector.
        """
        norm = self.norm()
        if norm == 0.0:
            raise InvalidState("Cannot normalize the zero vector.")
        return self.with_amplitudes(self.amplitudes / norm)

    def with_amplitudes(self, amplitudes: np.ndarray) -> "TruncatedState":
        """A state on the same modes and cutoff with new amplitudes."""
        return TruncatedState(modes=self.modes, cutoff=self.cutoff, amplitudes=amplitudes)

    def inner(self, other: "TruncatedState") -> complex:
        """The inner product <self|other>, conjugate-linear in self."""
        if self.dimension != other.dimension:
            raise DimensionMismatch(
                f"Cannot take the inner product of states with dimensions "
                f"{self.dimension} and {other.dimension}."
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def tensor(self, other: "TruncatedState") -> "TruncatedState":
        if self.cutoff != other.cutoff:
            raise DimensionMismatch("Tensor factors must share a cutoff.")
        return TruncatedState(
            modes=self.modes + other.modes,
            cutoff=self.cutoff,
            amplitudes=np.kron(self.amplitudes, other.amplitudes),
        )

    def to_density_matrix(self) -> "DensityMatrix":
        return DensityMatrix(
            modes=self.modes,
            cutoff=self.cutoff,
            entries=np.outer(self.amplitudes, self.amplitudes.conj()),
        )

    def mean_photon_number(self, mode: int = 0) -> float:
        """The expectation of the number operator on one mode."""
        populations = np.abs(np.moveaxis(self.tensor_view(), mode, 0)) ** 2
        levels = np.arange(self.cutoff.d)
        return float(np.sum(levels * populations.reshape(self.cutoff.d, -1).sum(axis=1)))


def product_state(factors: list[TruncatedState]) -> TruncatedState:
    """The tensor product of a list of states, in order."""
    return reduce(TruncatedState.tensor, factors)


@dataclass(frozen=True, kw_only=True, eq=False)
class DensityMatrix:
    """
    A density matrix on a truncated Fock space.

    Construction checks Hermiticity and unit trace. Positivity is checked when
    the spectrum is taken (see eigenvalues()), since that needs a full
    diagonalization.

    Attributes:
        modes: The number of modes.
        cutoff: The per-mode cutoff.
        entries: Complex (d**modes x d**modes) matrix. Read-only.
    """

    modes: int
    cutoff: FockCutoff
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        dimension = self.cutoff.dimension(self.modes)
        if entries.shape != (dimension, dimension):
            raise DimensionMismatch(
                f"{self.modes} modes at d={self.cutoff.d} need a {dimension}x{dimension} "
                f"matrix, got {entries.shape}."
            )
        if not is_hermitian(entries, settings.hermitian_tolerance):
            raise InvalidState("Density matrix is not Hermitian.")
        trace = np.trace(entries).real
        if abs(trace - 1.0) > settings.normalization_tolerance:
            raise InvalidState(f"Density matrix has trace {trace!r}, expected 1.")
        object.__setattr__(self, "entries", frozen(entries))

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """
        The spectrum, with round-off negatives clipped to zero.

        Raises:
            InvalidState: If an eigenvalue is below -settings.eigenvalue_clip.
        """
        return clipped_spectrum(self.entries)

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal().real.copy()


def clipped_spectrum(entries: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of a Hermitian positive matrix, clipping [-clip, 0) to 0.

    Raises:
        InvalidState: If an eigenvalue is more negative than the clip.
    """
    eigenvalues = np.linalg.eigvalsh(entries)
    if eigenvalues.size and eigenvalues[0] < -settings.eigenvalue_clip:
        raise InvalidState(
            f"Matrix has eigenvalue {eigenvalues[0]:.3e}, below "
            f"-{settings.eigenvalue_clip:g}."
        )
    return np.clip(eigenvalues, 0.0, None)
