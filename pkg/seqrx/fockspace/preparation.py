import logging

import numpy as np
from scipy.special import gammaln

from seqrx.errors import InvalidParams
from seqrx.fockspace.cutoff import GEOMETRIC, POISSON, FockCutoff, check_leakage
from seqrx.fockspace.states import DensityMatrix, TruncatedState

logger = logging.getLogger(__name__)


def coherent_amplitudes(alpha: complex, cutoff: FockCutoff) -> np.ndarray:
    """
    Amplitudes alpha^n / sqrt(n!) * exp(-|alpha|^2 / 2) on levels 0..d-1.

    Evaluated in log space so that large n neither overflows alpha^n nor n!.
    The vector is renormalized over the retained levels.

    Raises:
        CutoffTooSmall: If the Poisson tail beyond the cutoff exceeds tolerance.
    """
    alpha = complex(alpha)
    mean = abs(alpha) ** 2
    check_leakage(mean, cutoff, POISSON)

    amplitudes = np.zeros(cutoff.d, dtype=complex)
    if alpha == 0:
        amplitudes[0] = 1.0
        return amplitudes

    levels = np.arange(cutoff.d)
    log_magnitude = levels * np.log(abs(alpha)) - 0.5 * gammaln(levels + 1) - mean / 2
    amplitudes = np.exp(log_magnitude) * np.exp(1j * np.angle(alpha) * levels)
    return amplitudes / np.linalg.norm(amplitudes)


def coherent_state(alpha: complex, cutoff: FockCutoff) -> TruncatedState:
    """
    The single-mode coherent state |alpha>.

    Args:
        alpha: The complex amplitude. The mean photon number is |alpha|^2.
        cutoff: The Fock cutoff.

    Raises:
        CutoffTooSmall: If the Poisson tail beyond the cutoff exceeds tolerance.
    """
    return TruncatedState(
        modes=1, cutoff=cutoff, amplitudes=coherent_amplitudes(alpha, cutoff)
    )


def thermal_populations(ns: float, cutoff: FockCutoff) -> np.ndarray:
    """
    Populations ns^n / (ns+1)^(n+1) on levels 0..d-1, renormalized.

    These are also the squared Schmidt coefficients of a two-mode squeezed
    vacuum with sinh(r)^2 = ns.

    Raises:
        InvalidParams: If ns is negative.
        CutoffTooSmall: If the geometric tail beyond the cutoff exceeds tolerance.
    """
    if ns < 0:
        raise InvalidParams(f"Mean photon number must be >= 0, got {ns}.")
    check_leakage(ns, cutoff, GEOMETRIC)

    populations = np.zeros(cutoff.d)
    if ns == 0:
        populations[0] = 1.0
        return populations

    levels = np.arange(cutoff.d)
    populations = np.exp(levels * np.log(ns) - (levels + 1) * np.log1p(ns))
    return populations / populations.sum()


def thermal_state(ns: float, cutoff: FockCutoff) -> DensityMatrix:
    """
    The single-mode thermal state with mean photon number ns.

    Raises:
        CutoffTooSmall: If the geometric tail beyond the cutoff exceeds tolerance.
    """
    return DensityMatrix(
        modes=1, cutoff=cutoff, entries=np.diag(thermal_populations(ns, cutoff))
    )


def fock_state(levels: tuple[int, ...] | int, cutoff: FockCutoff) -> TruncatedState:
    """The number state |n_0, n_1, ...>."""
    levels = (levels,) if isinstance(levels, int) else tuple(levels)
    if any(level < 0 or level >= cutoff.d for level in levels):
        raise InvalidParams(f"Levels {levels} do not fit below d={cutoff.d}.")
    amplitudes = np.zeros(cutoff.dimension(len(levels)), dtype=complex)
    amplitudes[np.ravel_multi_index(levels, (cutoff.d,) * len(levels))] = 1.0
    return TruncatedState(modes=len(levels), cutoff=cutoff, amplitudes=amplitudes)
