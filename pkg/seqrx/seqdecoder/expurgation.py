import logging

import numpy as np

from seqrx.codec import Codebook, codeword_gram
from seqrx.errors import InvalidParams
from seqrx.seqdecoder.gram_chain import per_message_success

logger = logging.getLogger(__name__)


def expurgate(codebook: Codebook, fraction: float = 0.5, order=None) -> Codebook:
    """
    Drop the messages with the worst exact error probability.

    Args:
        codebook: The codebook to thin out.
        fraction: Share of messages to drop, in [0, 1). At least one message is
            always kept.
        order: Test order the per-message errors are evaluated under.

    Returns:
        Codebook: The surviving messages in their original order, renumbered
            from 1. expurgated_from records the original M.
    """
    if not 0.0 <= fraction < 1.0:
        raise InvalidParams(f"Expurgation fraction must be in [0, 1), got {fraction}.")
    success = per_message_success(codeword_gram(codebook), order)
    keep = max(1, codebook.M - int(np.floor(fraction * codebook.M)))

    # Stable sort keeps ties in message order.
    best = np.sort(np.argsort(-success, kind="stable")[:keep])
    logger.debug("Expurgation kept %s of %s messages.", keep, codebook.M)
    return codebook.with_messages([int(index) + 1 for index in best])
