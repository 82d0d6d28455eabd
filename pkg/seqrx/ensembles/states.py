"""
Explicit Fock-space states of the symbol families and their closed-form overlaps.

Coherent symbols are complex amplitudes. Reading symbols are the phases a memory
cell imprints on the probe: Type-II probes are single-mode states with thermal
populations, Type-III probes are two-mode squeezed vacua whose signal mode
carries the phase.
"""

import logging

import numpy as np

from seqrx.constants import families
from seqrx.ensembles.families import StateFamily, as_family
from seqrx.errors import InvalidParams, UnknownFamily, UnsupportedFamily
from seqrx.fockspace import (
    DensityMatrix,
    FockCutoff,
    TruncatedState,
    coherent_state,
    product_state,
    thermal_populations,
)

logger = logging.getLogger(__name__)


def reading_amplitudes(ns: float, theta: float, cutoff: FockCutoff) -> np.ndarray:
    """sqrt(ns^n / (ns+1)^(n+1)) * exp(i n theta), renormalized over the cutoff."""
    levels = np.arange(cutoff.d)
    return np.sqrt(thermal_populations(ns, cutoff)) * np.exp(1j * theta * levels)


def reading_state(family: StateFamily, theta: float, cutoff: FockCutoff) -> TruncatedState:
    """
    The probe state after a memory cell with phase theta.

    Args:
        family: A reading family. Its ns sets the probe energy.
        theta: The cell phase in radians.
        cutoff: Per-mode cutoff.

    Returns:
        TruncatedState: One mode for reading_II. Two modes (signal, idler) for
            reading_III, with amplitudes on |n>|n> only.

    Raises:
        UnsupportedFamily: For the coherent family.
        CutoffTooSmall: If the geometric tail exceeds the leakage tolerance.
    """
    amplitudes = reading_amplitudes(family.ns, theta, cutoff)
    if family.tag == families.READING_II:
        return TruncatedState(modes=1, cutoff=cutoff, amplitudes=amplitudes)
    if family.tag == families.READING_III:
        paired = np.zeros(cutoff.dimension(2), dtype=complex)
        levels = np.arange(cutoff.d)
        paired[levels * cutoff.d + levels] = amplitudes
        return TruncatedState(modes=2, cutoff=cutoff, amplitudes=paired)
    raise UnsupportedFamily(f"{family.tag} is not a reading family.")


def symbol_state(family: StateFamily, symbol: complex, cutoff: FockCutoff) -> TruncatedState:
    """The state carrying one symbol: |symbol> for coherent, a reading probe otherwise."""
    if family.tag == families.COHERENT:
        return coherent_state(symbol, cutoff)
    return reading_state(family, float(np.real(symbol)), cutoff)


def codeword_state(
    family: StateFamily, symbols: np.ndarray, cutoff: FockCutoff
) -> TruncatedState:
    """The product state of a whole codeword, symbol 1 on the leading modes."""
    return product_state([symbol_state(family, symbol, cutoff) for symbol in symbols])


def analytic_overlap(family: StateFamily, symbol_a, symbol_b):
    """
    The inner product <phi(a)|phi(b)> of two symbol states.

    Coherent: exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
    Reading (II and III): 1 / (ns + 1 - ns exp(i (theta_b - theta_a))).

    Arguments broadcast like numpy arrays.

    Raises:
        UnknownFamily: If family is neither a StateFamily nor a known tag.
    """
    if not isinstance(family, StateFamily):
        family = as_family(family)
    if family.tag == families.COHERENT:
        a, b = np.asarray(symbol_a, dtype=complex), np.asarray(symbol_b, dtype=complex)
        overlap = np.exp(-0.5 * np.abs(a) ** 2 - 0.5 * np.abs(b) ** 2 + np.conj(a) * b)
    elif family.tag in families.READING:
        delta = np.real(np.asarray(symbol_b)) - np.real(np.asarray(symbol_a))
        overlap = 1.0 / (family.ns + 1.0 - family.ns * np.exp(1j * delta))
    else:
        raise UnknownFamily(f"Unknown state family: {family.tag!r}")
    return complex(overlap) if np.ndim(overlap) == 0 else overlap


def phase_average(
    family: StateFamily | str, ns: float, phases: int, cutoff: FockCutoff
) -> DensityMatrix:
    """
    The uniform average of a probe over phases theta_k = 2 pi k / phases.

    With phases >= d the average is exactly diagonal under the truncation, since
    the off-diagonal (n, m) terms sum exp(i (n - m) theta_k) to zero.

    Args:
        family: Any family tag. Coherent probes use amplitude sqrt(ns).
        ns: Mean photon number of the probe.
        phases: The number of phase samples K >= 1.
        cutoff: Per-mode cutoff.

    Raises:
        CutoffTooSmall: If the probe leaks past the cutoff.
    """
    if phases < 1:
        raise InvalidParams(f"Phase averaging needs at least one phase, got {phases}.")
    family = as_family(family, ns)

    thetas = 2.0 * np.pi * np.arange(phases) / phases
    if family.tag == families.COHERENT:
        amplitude = np.sqrt(family.ns)
        states = [coherent_state(amplitude * np.exp(1j * theta), cutoff) for theta in thetas]
    else:
        states = [reading_state(family, theta, cutoff) for theta in thetas]

    columns = np.stack([state.amplitudes for state in states], axis=1)
    return DensityMatrix(
        modes=states[0].modes,
        cutoff=cutoff,
        entries=columns @ columns.conj().T / phases,
    )
