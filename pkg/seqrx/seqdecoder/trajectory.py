"""
Measurement trajectories of the sequential decoder in the codeword span.

The decoder asks "is it codeword i?" in test order. A "yes" stops it with
decision i; a "no" collapses the state with I - |psi_i><psi_i| and moves on,
even past the sent message, since the receiver does not know it. If every
answer is "no" the outcome is FAIL.
"""

import logging

import numpy as np

from seqrx import settings
from seqrx.constants import engines
from seqrx.constants.branches import FAIL
from seqrx.errors import NumericalCollapse
from seqrx.seqdecoder.outcomes import DecodeOutcome
from seqrx.seqdecoder.span import SpanRepresentation, decoding_order
from seqrx.utils import as_rng

logger = logging.getLogger(__name__)


def trajectory_distribution(span: SpanRepresentation, m: int, order=None) -> np.ndarray:
    """
    The exact distribution of the decision when message m is sent.

    Args:
        span: Factored codebook.
        m: The sent message, 1..M.
        order: Optional test order.

    Returns:
        np.ndarray: Length M + 1. Entry 0 is P(FAIL), entry i is P(decoded = i).
    """
    order = decoding_order(span.M, order)
    chi = span.vector(m).copy()
    distribution = np.zeros(span.M + 1)
    for i in order:
        psi = span.vector(i)
        amplitude = np.vdot(psi, chi)
        distribution[i] = abs(amplitude) ** 2
        chi = chi - psi * amplitude
    distribution[FAIL] = np.linalg.norm(chi) ** 2
    return distribution


def simulate_trajectory(
    span: SpanRepresentation, m: int, rng: np.random.Generator | int | None = None, order=None
) -> DecodeOutcome:
    """
    Sample one decoding run with measurement back-action.

    Each test consumes one uniform draw from rng.

    Raises:
        NumericalCollapse: If a "no" leaves a state with norm below
            settings.collapse_threshold.
    """
    rng = as_rng(rng)
    chi = span.vector(m).copy()
    chi = chi / np.linalg.norm(chi)
    steps = []
    for i in decoding_order(span.M, order):
        psi = span.vector(i)
        amplitude = np.vdot(psi, chi)
        if rng.random() < min(1.0, abs(amplitude) ** 2):
            steps.append(True)
            return DecodeOutcome(
                true_message=m, decoded=i, step_outcomes=tuple(steps), engine_id=engines.GRAM
            )
        steps.append(False)
        chi = chi - psi * amplitude
        norm = np.linalg.norm(chi)
        if norm < settings.collapse_threshold:
            raise NumericalCollapse(
                f"Test {i} consumed the state of message {m} (norm {norm:.3e})."
            )
        chi = chi / norm
    return DecodeOutcome(
        true_message=m, decoded=FAIL, step_outcomes=tuple(steps), engine_id=engines.GRAM
    )
