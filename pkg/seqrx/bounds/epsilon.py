import logging

import numpy as np

from seqrx.errors import InvalidParams

logger = logging.getLogger(__name__)


def codebook_term(n: int, entropy_bits: float, delta: float, messages: float) -> float:
    """2^(-n (H - delta)) |M|, evaluated as one power of two so it cannot overflow."""
    return float(np.exp2(np.log2(messages) - n * (entropy_bits - delta)))


def epsilon_prime(
    epsilon: float, n: int, entropy_bits: float, delta: float, messages: float
) -> float:
    """
    The overall error bound of the sequential decoder,
    eps + 2 sqrt(eps) + 2 sqrt(2 sqrt(eps) + 2^(-n (H - delta)) |M|).

    Args:
        epsilon: Typicality failure probability, in [0, 1).
        n: Blocklength.
        entropy_bits: Entropy H of the average channel output state, in bits.
        delta: Typicality slack, > 0.
        messages: The message count |M|, >= 1.

    Raises:
        InvalidParams: For arguments outside their ranges.
    """
    if not 0.0 <= epsilon < 1.0:
        raise InvalidParams(f"epsilon must be in [0, 1), got {epsilon}.")
    if delta <= 0:
        raise InvalidParams(f"delta must be > 0, got {delta}.")
    if n < 1 or messages < 1:
        raise InvalidParams(f"Need n >= 1 and |M| >= 1, got n={n}, |M|={messages}.")
    root = np.sqrt(epsilon)
    return float(
        epsilon + 2.0 * root + 2.0 * np.sqrt(2.0 * root + codebook_term(n, entropy_bits, delta, messages))
    )
