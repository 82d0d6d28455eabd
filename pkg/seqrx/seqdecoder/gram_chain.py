import logging

import numpy as np

from seqrx.codec import GramMatrix
from seqrx.errors import IndexOutOfRange
from seqrx.seqdecoder.span import SpanRepresentation, decoding_order

logger = logging.getLogger(__name__)


def _chain_success(span: SpanRepresentation, m: int, order: list[int]) -> float:
    target = span.vector(m)
    chi = target.copy()
    for i in order[: order.index(m)]:
        psi = span.vector(i)
        chi = chi - psi * np.vdot(psi, chi)
    return float(min(1.0, abs(np.vdot(target, chi)) ** 2))


def gram_chain_success(
    gram: GramMatrix, m: int, order=None, span: SpanRepresentation | None = None
) -> float:
    """
    Probability that the sequential decoder answers "yes" first at message m.

    This is |<psi_m| P_k ... P_1 |psi_m>|^2, with P_i = I - |psi_i><psi_i| for
    the messages tested before m, applied in test order. It is evaluated inside
    the codeword span.

    Args:
        gram: The codebook's Gram matrix.
        m: The sent message, 1..M.
        order: Optional test order (a permutation of 1..M). Defaults to 1..M.
        span: A precomputed factor of gram, to skip refactoring.

    Raises:
        IndexOutOfRange: If m is outside 1..M.
    """
    if not 1 <= m <= gram.M:
        raise IndexOutOfRange(f"Message {m} is outside 1..{gram.M}.")
    span = span or SpanRepresentation.from_gram(gram)
    return _chain_success(span, m, decoding_order(gram.M, order))


def per_message_success(gram: GramMatrix, order=None) -> np.ndarray:
    """gram_chain_success for every message, indexed from message 1."""
    span = SpanRepresentation.from_gram(gram)
    order = decoding_order(gram.M, order)
    return np.array([_chain_success(span, m, order) for m in range(1, gram.M + 1)])


def average_error_exact(gram: GramMatrix, order=None) -> float:
    """The average error 1 - (1/M) sum_m gram_chain_success(gram, m) under uniform messages."""
    return float(min(1.0, max(0.0, 1.0 - per_message_success(gram, order).mean())))
