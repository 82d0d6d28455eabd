"""
Numerical checks of the operator inequalities behind the decoder's error bound.

Every check returns a BoundReport with both sides, so a regression shows up as
negative slack rather than a bare False.
"""

import logging

import numpy as np

from seqrx import settings
from seqrx.bounds.report import BoundReport
from seqrx.errors import InvalidOperator, InvalidParams, InvalidState, NotAProjector
from seqrx.fockspace import DensityMatrix, trace_distance, trace_norm
from seqrx.utils import is_hermitian

logger = logging.getLogger(__name__)


def as_matrix(operator: DensityMatrix | np.ndarray) -> np.ndarray:
    if isinstance(operator, DensityMatrix):
        return operator.entries
    return np.asarray(operator, dtype=complex)


def check_effect(operator: np.ndarray):
    """
    Raise InvalidOperator unless 0 <= operator <= I within settings.projector_tolerance.
    """
    if not is_hermitian(operator, settings.projector_tolerance):
        raise InvalidOperator("Operator is not Hermitian.")
    eigenvalues = np.linalg.eigvalsh(operator)
    tolerance = settings.projector_tolerance
    if eigenvalues[0] < -tolerance or eigenvalues[-1] > 1.0 + tolerance:
        raise InvalidOperator(
            f"Operator spectrum [{eigenvalues[0]:.3e}, {eigenvalues[-1]:.3e}] "
            f"is not inside [0, 1]."
        )


def check_projector(operator: np.ndarray):
    """Raise NotAProjector unless the operator is a Hermitian idempotent."""
    tolerance = settings.projector_tolerance
    if not is_hermitian(operator, tolerance):
        raise NotAProjector("Projector is not Hermitian.")
    if np.max(np.abs(operator @ operator - operator)) > tolerance:
        raise NotAProjector("Operator is not idempotent.")


def square_root(effect: np.ndarray) -> np.ndarray:
    """The principal square root of a positive operator."""
    eigenvalues, eigenvectors = np.linalg.eigh(effect)
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (eigenvectors * roots) @ eigenvectors.conj().T


def _expectation(effect: np.ndarray, state: np.ndarray) -> float:
    return float(np.real(np.trace(effect @ state)))


def trace_lemma_gap(
    rho: DensityMatrix | np.ndarray, sigma: DensityMatrix | np.ndarray, effect: np.ndarray
) -> BoundReport:
    """
    Tr[L rho] <= Tr[L sigma] + ||rho - sigma||_1 for any effect 0 <= L <= I.

    Raises:
        InvalidOperator: If effect is not between 0 and I.
    """
    rho, sigma, effect = as_matrix(rho), as_matrix(sigma), as_matrix(effect)
    check_effect(effect)
    return BoundReport(
        lhs=_expectation(effect, rho),
        rhs=_expectation(effect, sigma) + trace_distance(rho, sigma),
    )


def _hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def gentle_operator_gap(
    ensemble: list[tuple[float, DensityMatrix | np.ndarray]], effect: np.ndarray
) -> BoundReport:
    """
    Expected disturbance of an ensemble by a likely measurement outcome.

    With eps = 1 - Tr[L rho_bar], where rho_bar is the ensemble average,
    E_x || sqrt(L) rho_x sqrt(L) - rho_x ||_1 <= 2 sqrt(eps).

    Args:
        ensemble: (probability, state) pairs. Probabilities must sum to 1.
        effect: The measurement operator L, 0 <= L <= I.

    Raises:
        InvalidOperator: If effect is not between 0 and I.
    """
    effect = as_matrix(effect)
    check_effect(effect)
    weights = np.array([weight for weight, _ in ensemble], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1.0) > settings.normalization_tolerance:
        raise InvalidParams("Ensemble weights must be a probability distribution.")

    states = [as_matrix(state) for _, state in ensemble]
    average = sum(weight * state for weight, state in zip(weights, states))
    epsilon = max(0.0, 1.0 - _expectation(effect, average))

    root = square_root(effect)
    disturbance = sum(
        weight * trace_norm(_hermitian_part(root @ state @ root - state))
        for weight, state in zip(weights, states)
    )
    return BoundReport(lhs=float(disturbance), rhs=2.0 * np.sqrt(epsilon))


def sen_bound_gap(sigma: np.ndarray, projectors: list[np.ndarray]) -> BoundReport:
    """
    The non-commutative union bound for a chain of projective tests:

        Tr[sigma] - Tr[P_N ... P_1 sigma P_1 ... P_N]
            <= 2 sqrt(sum_i Tr[(I - P_i) sigma]),

    with P_1 applied first.

    Args:
        sigma: A positive operator with trace <= 1.
        projectors: The projectors, in the order they are applied.

    Raises:
        InvalidState: If sigma is not positive or has trace above 1.
        NotAProjector: If any element of projectors is not a projector.
    """
    sigma = as_matrix(sigma)
    if not is_hermitian(sigma, settings.hermitian_tolerance):
        raise InvalidState("sigma is not Hermitian.")
    if np.linalg.eigvalsh(sigma)[0] < -settings.eigenvalue_clip:
        raise InvalidState("sigma is not positive semidefinite.")
    total = float(np.real(np.trace(sigma)))
    if total > 1.0 + settings.normalization_tolerance:
        raise InvalidState(f"sigma has trace {total!r} > 1.")

    chained = sigma
    missed = 0.0
    for projector in projectors:
        projector = as_matrix(projector)
        check_projector(projector)
        missed += total - _expectation(projector, sigma)
        chained = projector @ chained @ projector

    return BoundReport(
        lhs=total - float(np.real(np.trace(chained))),
        rhs=2.0 * np.sqrt(max(0.0, missed)),
    )
