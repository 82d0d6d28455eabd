"""
Conditional pulse nulling (CPN) for pulse-position codebooks.

The receiver hypothesizes slot h, nulls it with D(-alpha) and direct-detects it.
No click confirms the hypothesis so far: the remaining slots h+1..M are
direct-detected and the first click, if any, is decoded, otherwise h is. A click
rejects h and the same procedure restarts on the later slots with hypothesis h+1.
Slots already tested are never revisited.

Detection is ideal: a coherent state |beta> clicks with probability
1 - exp(-|beta|^2), independently across slots, with no dark counts.
"""

import logging

import numpy as np

from seqrx.codec import Codebook
from seqrx.constants import engines, priors
from seqrx.constants.branches import FAIL
from seqrx.errors import UnsupportedFamily
from seqrx.seqdecoder.outcomes import DecodeOutcome
from seqrx.utils import as_rng

logger = logging.getLogger(__name__)


def click_probability(beta: complex) -> float:
    return float(1.0 - np.exp(-abs(beta) ** 2))


def pulse_slots(codebook: Codebook) -> list[int]:
    """The 0-indexed pulse slot of each message."""
    return [int(np.argmax(np.abs(codebook.symbols[m]))) for m in range(codebook.M)]


def cpn_receiver(
    codebook: Codebook, true_slot: int, rng: np.random.Generator | int | None = None
) -> DecodeOutcome:
    """
    Decode one pulse-position transmission with conditional pulse nulling.

    Hypotheses are tested in slot order. For an unexpurgated codebook message m
    sits in slot m, so this is message order.

    Args:
        codebook: A ppm codebook; each codeword carries alpha in one slot.
        true_slot: The sent message, 1..M.
        rng: Randomness for the detector clicks.

    Returns:
        DecodeOutcome: step_outcomes holds, per hypothesis tested, True when the
            nulled slot stayed dark.

    Raises:
        UnsupportedFamily: For codebooks that are not pulse-position coded.
    """
    if codebook.prior != priors.PPM:
        raise UnsupportedFamily(f"CPN decodes ppm codebooks, not {codebook.prior}.")
    rng = as_rng(rng)
    received = codebook.codeword(true_slot)
    slots = pulse_slots(codebook)
    hypotheses = sorted(range(1, codebook.M + 1), key=lambda message: slots[message - 1])

    steps = []
    for position, hypothesis in enumerate(hypotheses):
        slot = slots[hypothesis - 1]
        beta = received[slot] - codebook.codeword(hypothesis)[slot]
        if rng.random() < click_probability(beta):
            steps.append(False)
            continue

        steps.append(True)
        decoded = hypothesis
        for later in hypotheses[position + 1 :]:
            if rng.random() < click_probability(received[slots[later - 1]]):
                decoded = later
                break
        return DecodeOutcome(
            true_message=true_slot, decoded=decoded, step_outcomes=tuple(steps), engine_id=engines.CPN
        )

    return DecodeOutcome(
        true_message=true_slot, decoded=FAIL, step_outcomes=tuple(steps), engine_id=engines.CPN
    )
