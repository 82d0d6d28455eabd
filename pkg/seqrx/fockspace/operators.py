"""
Truncated Gaussian unitaries: displacement, phase shift and two-mode squeezing.

Displacements and squeezers are built by exponentiating their generator on a
padded basis (settings.operator_padding times the cutoff) with scipy's
scaling-and-squaring expm, then slicing back to the cutoff. The sliced block is
the truncation of the true operator, which is only unitary on the sector with
occupation <= d/2; the defect on that sector is checked on construction.
"""

import logging
from dataclasses import dataclass, replace
from functools import cache

import numpy as np
from scipy.linalg import expm

from seqrx import settings
from seqrx.constants import operators
from seqrx.errors import BudgetExceeded, CutoffTooSmall, DimensionMismatch
from seqrx.fockspace.cutoff import FockCutoff
from seqrx.fockspace.states import TruncatedState
from seqrx.utils import frozen

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class GaussianUnitarySpec:
    """
    Description of one Gaussian unitary.

    Attributes:
        kind: operators.DISPLACE, operators.PHASE or operators.SQUEEZE2.
        parameter: Complex alpha for D(alpha) = exp(alpha a^dag - alpha^* a); real
            theta for P(theta) = exp(i theta n); real r >= 0 for the two-mode
            squeezer S(r) = exp(r (a^dag b^dag - a b)).
        modes: The modes acted on. One mode for displace and phase, two distinct
            modes (a, b) for squeeze2.
        adjoint: Whether the spec denotes the adjoint of the operator.

    Methods:
        displace: Spec for D(alpha) on a mode.
        phase: Spec for P(theta) on a mode.
        squeeze2: Spec for S(r) on a pair of modes.
        dagger: The spec of the adjoint operator.
    """

    kind: str
    parameter: complex
    modes: tuple[int, ...] = (0,)
    adjoint: bool = False

    def __post_init__(self):
        if self.kind not in operators.ALL:
            raise ValueError(f"Unknown Gaussian unitary kind: {self.kind}")
        object.__setattr__(self, "modes", tuple(int(mode) for mode in self.modes))
        if self.kind == operators.SQUEEZE2:
            if len(self.modes) != 2 or self.modes[0] == self.modes[1]:
                raise ValueError("squeeze2 acts on exactly two distinct modes.")
            if complex(self.parameter).imag != 0 or complex(self.parameter).real < 0:
                raise ValueError(f"Squeezing strength must be real and >= 0.")
            object.__setattr__(self, "parameter", float(complex(self.parameter).real))
        else:
            if len(self.modes) != 1:
                raise ValueError(f"{self.kind} acts on exactly one mode.")
            if self.kind == operators.PHASE:
                object.__setattr__(self, "parameter", float(self.parameter))
            else:
                object.__setattr__(self, "parameter", complex(self.parameter))
        if min(self.modes) < 0:
            raise ValueError("Mode indices must be non-negative.")

    @classmethod
    def displace(cls, alpha: complex, mode: int = 0) -> "GaussianUnitarySpec":
        return cls(kind=operators.DISPLACE, parameter=alpha, modes=(mode,))

    @classmethod
    def phase(cls, theta: float, mode: int = 0) -> "GaussianUnitarySpec":
        return cls(kind=operators.PHASE, parameter=theta, modes=(mode,))

    @classmethod
    def squeeze2(cls, r: float, modes: tuple[int, int] = (0, 1)) -> "GaussianUnitarySpec":
        return cls(kind=operators.SQUEEZE2, parameter=r, modes=modes)

    def dagger(self) -> "GaussianUnitarySpec":
        return replace(self, adjoint=not self.adjoint)


def annihilation(d: int) -> np.ndarray:
    """The truncated annihilation operator on levels 0..d-1."""
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1)


def _sector_defect(block: np.ndarray, columns: int) -> float:
    """Max deviation of B^dag B from I over the first `columns` columns."""
    if columns <= 0:
        return 0.0
    trusted = block[:, :columns]
    gram = trusted.conj().T @ trusted
    return float(np.max(np.abs(gram - np.eye(columns))))


def _check_defect(defect: float, spec_name: str, cutoff: FockCutoff):
    if defect > settings.unitarity_tolerance:
        raise CutoffTooSmall(
            f"{spec_name} at d={cutoff.d} has unitary defect {defect:.3e} on levels "
            f"<= {cutoff.sector} (tolerance {settings.unitarity_tolerance:g})."
        )


@cache
def _displacement(alpha: complex, d: int) -> np.ndarray:
    padded = settings.operator_padding * d
    a = annihilation(padded)
    generator = alpha * a.conj().T - np.conj(alpha) * a
    return expm(generator)[:d, :d]


@cache
def _squeeze2_sector(r: float, d: int, difference: int) -> np.ndarray:
    offset = abs(difference)
    size = d - offset
    padded = settings.operator_padding * d - offset
    if r == 0:
        return np.eye(size)

    # Basis |k + offset, k> (or its mirror); a^dag b^dag raises both occupations.
    k = np.arange(padded - 1)
    coupling = r * np.sqrt((k + offset + 1.0) * (k + 1.0))
    generator = np.zeros((padded, padded))
    generator[k + 1, k] = coupling
    generator[k, k + 1] = -coupling
    return expm(generator)[:size, :size]


def squeeze2_sector(
    r: float, cutoff: FockCutoff, difference: int = 0, adjoint: bool = False
) -> np.ndarray:
    """
    The two-mode squeezer restricted to a photon-number-difference sector.

    S(r) conserves n_a - n_b, so it is block diagonal over sectors. The sector
    with difference D >= 0 has basis |k + D, k> for k = 0..d-|D|-1 (mirrored for
    D < 0). The equal-occupation sector D = 0 holds the two-mode squeezed vacuum.

    Args:
        r: Squeezing strength, r >= 0.
        cutoff: Per-mode cutoff.
        difference: The sector n_a - n_b, with |difference| < d.
        adjoint: Return the block of S^dag(r) instead.

    Returns:
        np.ndarray: Real (d-|D|) x (d-|D|) matrix. Read-only.

    Raises:
        CutoffTooSmall: If the block is not unitary on occupations <= d/2.
    """
    if abs(difference) >= cutoff.d:
        raise ValueError(f"Sector {difference} does not exist at d={cutoff.d}.")
    if r < 0:
        raise ValueError("Squeezing strength must be >= 0.")

    block = _squeeze2_sector(float(r), cutoff.d, int(difference))
    _check_defect(
        _sector_defect(block, cutoff.sector - abs(difference) + 1),
        f"squeeze2({r:g}) sector {difference}",
        cutoff,
    )
    return frozen(block.T.copy() if adjoint else block.copy())


def _squeeze2_matrix(r: float, cutoff: FockCutoff) -> np.ndarray:
    d = cutoff.d
    if d * d > settings.dense_operator_limit:
        raise BudgetExceeded(
            f"A dense two-mode operator at d={d} needs {d * d} amplitudes per side "
            f"(limit {settings.dense_operator_limit}). Use squeeze2_sector instead."
        )
    matrix = np.zeros((d * d, d * d))
    for difference in range(-(d - 1), d):
        block = squeeze2_sector(r, cutoff, difference)
        k = np.arange(d - abs(difference))
        if difference >= 0:
            indices = (k + difference) * d + k
        else:
            indices = k * d + (k - difference)
        matrix[np.ix_(indices, indices)] = block
    return matrix


def unitary_defect(spec: GaussianUnitarySpec, cutoff: FockCutoff) -> float:
    """
    Max |B^dag B - I| of the truncated operator over columns <= cutoff.sector.

    For squeeze2 only the equal-occupation sector is measured, which is the one
    that holds two-mode squeezed states.
    """
    if spec.kind == operators.PHASE:
        return 0.0
    if spec.kind == operators.DISPLACE:
        block = _displacement(spec.parameter, cutoff.d)
    else:
        block = _squeeze2_sector(spec.parameter, cutoff.d, 0)
    if spec.adjoint:
        block = block.conj().T
    return _sector_defect(block, cutoff.sector + 1)


def fit_cutoff(cutoff: FockCutoff, specs: list[GaussianUnitarySpec]) -> FockCutoff:
    """
    Widen a cutoff until every operator is unitary on its trusted levels.

    Args:
        cutoff: The starting cutoff. Its trusted level is kept.
        specs: The operators that will be applied at the cutoff.

    Returns:
        FockCutoff: The smallest cutoff found (in steps of about 1/4) at which
            every unitary_defect is within settings.unitarity_tolerance.

    Raises:
        CutoffTooSmall: If no cutoff up to settings.max_cutoff works.
    """
    d = cutoff.d
    while d <= settings.max_cutoff:
        candidate = FockCutoff(d, trusted=cutoff.sector)
        if all(unitary_defect(spec, candidate) <= settings.unitarity_tolerance for spec in specs):
            if candidate.d != cutoff.d:
                logger.debug("Widened cutoff from %s to %s.", cutoff.d, candidate.d)
            return candidate
        d += max(2, d // 4)
    raise CutoffTooSmall(
        f"No cutoff up to {settings.max_cutoff} keeps the receiver operators unitary "
        f"on levels <= {cutoff.sector}."
    )


def gaussian_unitary(spec: GaussianUnitarySpec, cutoff: FockCutoff) -> np.ndarray:
    """
    The cutoff-truncated matrix of a Gaussian unitary.

    Args:
        spec: What to build.
        cutoff: Per-mode cutoff.

    Returns:
        np.ndarray: A d x d matrix for single-mode operators, d^2 x d^2 (mode a
            most significant) for squeeze2. Read-only.

    Raises:
        CutoffTooSmall: If the unitary defect on levels <= cutoff.sector exceeds
            settings.unitarity_tolerance.
        BudgetExceeded: If a dense squeeze2 matrix would be too large.
    """
    if spec.kind == operators.PHASE:
        matrix = np.diag(np.exp(1j * spec.parameter * np.arange(cutoff.d)))
    elif spec.kind == operators.DISPLACE:
        _check_defect(unitary_defect(spec, cutoff), f"displace({spec.parameter:g})", cutoff)
        matrix = _displacement(spec.parameter, cutoff.d)
    else:
        matrix = _squeeze2_matrix(spec.parameter, cutoff)

    if spec.adjoint:
        matrix = matrix.conj().T
    return frozen(np.array(matrix, dtype=complex))


def apply_operator(
    state: TruncatedState, matrix: np.ndarray, modes: tuple[int, ...]
) -> TruncatedState:
    """
    Act with an operator on selected modes of a multimode state.

    Args:
        state: The state acted on.
        matrix: A d^k x d^k matrix, where k = len(modes), with modes[0] the most
            significant index.
        modes: The modes the operator acts on, in the matrix's index order.

    Returns:
        TruncatedState: The (unnormalized) image of the state.
    """
    d, k = state.cutoff.d, len(modes)
    if matrix.shape != (d**k, d**k):
        raise DimensionMismatch(
            f"A {k}-mode operator at d={d} must be {d**k}x{d**k}, got {matrix.shape}."
        )
    if max(modes) >= state.modes:
        raise DimensionMismatch(f"Modes {modes} do not exist on a {state.modes}-mode state.")

    operator = matrix.reshape((d,) * (2 * k))
    image = np.tensordot(operator, state.tensor_view(), axes=(list(range(k, 2 * k)), list(modes)))
    image = np.moveaxis(image, list(range(k)), list(modes))
    return state.with_amplitudes(image.reshape(-1))


def apply_unitary(state: TruncatedState, spec: GaussianUnitarySpec) -> TruncatedState:
    """Apply the truncated unitary described by spec to a state."""
    return apply_operator(state, gaussian_unitary(spec, state.cutoff), spec.modes)
