"""
The physical sequential decoder, simulated in truncated Fock space.

Each test i undoes the modulation of codeword i mode by mode, measures
vacuum-or-not on all modes, and on a "no" re-applies the modulation to the
post-measurement state before the next test:

- coherent codewords: D(-alpha_ik) to null, D(alpha_ik) to restore;
- reading Type-III codewords: P^dag(theta_ik) then S^dag(r) per cell to null,
  S(r) then P(theta_ik) to restore.

Phase shifts, two-mode squeezing and the vacuum projector all keep a signal-idler
pair in its equal-occupation sector |k>|k>, so Type-III cells are simulated
there, one sector coordinate per cell.
"""

import logging

import numpy as np

from seqrx import settings
from seqrx.codec import Codebook
from seqrx.constants import branches, engines, families
from seqrx.constants.branches import FAIL
from seqrx.ensembles import codeword_state, reading_amplitudes
from seqrx.errors import BudgetExceeded, CutoffTooSmall, UnsupportedFamily
from seqrx.fockspace import (
    GEOMETRIC,
    POISSON,
    FockCutoff,
    GaussianUnitarySpec,
    TruncatedState,
    apply_operator,
    fit_cutoff,
    gaussian_unitary,
    leakage_cutoff,
    measure_vacuum_or_not,
    product_state,
    receiver_cutoff,
    squeeze2_sector,
)
from seqrx.seqdecoder.outcomes import DecodeOutcome
from seqrx.seqdecoder.span import decoding_order
from seqrx.utils import Timer, as_rng

logger = logging.getLogger(__name__)


def coherent_receiver_mean(symbols: np.ndarray) -> float:
    """
    The largest mean photon number a coherent receiver mode ever holds.

    Modes carry either a codeword amplitude or, after nulling with another
    codeword, the difference of two amplitudes.
    """
    differences = symbols[:, None, :] - symbols[None, :, :]
    return float(max(np.max(np.abs(symbols) ** 2), np.max(np.abs(differences) ** 2)))


def reading_receiver_mean(phases: np.ndarray, ns: float) -> float:
    """
    The largest mean photon number per mode a Type-III receiver cell ever holds.

    Nulling a cell with phase theta_i when it carries theta_m leaves
    S^dag P(theta_m - theta_i) S |00>, a two-mode squeezed state with mean
    4 ns (ns + 1) sin^2((theta_m - theta_i) / 2).
    """
    differences = phases[:, None, :] - phases[None, :, :]
    spread = 4.0 * ns * (ns + 1.0) * np.max(np.sin(differences / 2.0) ** 2)
    return float(max(ns, spread))


class FockReceiver:
    """
    A sequential receiver prepared for one codebook.

    Operators and codeword states are built once, so a receiver decodes many
    transmissions cheaply.

    Attributes:
        codebook: The codebook decoded.
        cutoff: Per-mode cutoff (per-cell sector size for Type-III codebooks).
        modes: The number of simulated modes (cells for Type-III).

    Methods:
        decode: Run the receiver on one sent message.
    """

    engine_id = engines.FOCK

    def __init__(self, codebook: Codebook, cutoff: FockCutoff | None = None):
        """
        Prepare the receiver.

        Args:
            codebook: A coherent or reading_III codebook.
            cutoff: Force a cutoff. By default it is picked by the leakage rule
                and widened until the receiver's operators are unitary on the
                levels its states occupy.

        Raises:
            UnsupportedFamily: For reading_II codebooks.
            BudgetExceeded: If a state needs more than
                settings.fock_amplitude_budget amplitudes.
            CutoffTooSmall: If no admissible cutoff exists.
        """
        family = codebook.family
        if family.tag not in (families.COHERENT, families.READING_III):
            raise UnsupportedFamily(
                f"The Fock receiver decodes coherent and reading_III codebooks, not {family.tag}."
            )
        self.codebook = codebook
        self.symbols = codebook.received_symbols
        self.modes = codebook.n

        with Timer("Fock receiver setup", logger):
            if family.tag == families.COHERENT:
                self.cutoff = cutoff or self._coherent_cutoff()
                self._check_budget()
                self._prepare_coherent()
            else:
                self.cutoff = cutoff or self._reading_cutoff()
                self._check_budget()
                self._prepare_reading()
        logger.debug(
            "Fock receiver for M=%s, n=%s at d=%s.", codebook.M, codebook.n, self.cutoff.d
        )

    def _coherent_cutoff(self) -> FockCutoff:
        start = receiver_cutoff(coherent_receiver_mean(self.symbols), POISSON)
        largest = float(np.max(np.abs(self.symbols)))
        return fit_cutoff(start, [GaussianUnitarySpec.displace(largest)])

    def _reading_cutoff(self) -> FockCutoff:
        # Receiver inputs stay in the span of the codewords, so the squeezers only
        # need to be unitary on the codewords' support. d must hold the nulled states.
        ns = self.codebook.ns
        support = leakage_cutoff(ns, GEOMETRIC).d
        nulled = leakage_cutoff(reading_receiver_mean(self.symbols, ns), GEOMETRIC).d
        start = FockCutoff(max(nulled, 2 * support), trusted=support)
        squeeze = GaussianUnitarySpec.squeeze2(self.codebook.family.squeezing)
        return fit_cutoff(start, [squeeze, squeeze.dagger()])

    def _check_budget(self):
        amplitudes = self.cutoff.dimension(self.modes)
        if amplitudes > settings.fock_amplitude_budget:
            raise BudgetExceeded(
                f"{self.modes} modes at d={self.cutoff.d} need {amplitudes} amplitudes "
                f"(budget {settings.fock_amplitude_budget})."
            )

    def _prepare_coherent(self):
        self._codewords = [
            codeword_state(self.codebook.family, row, self.cutoff) for row in self.symbols
        ]

        def displacement(alpha):
            if alpha == 0:
                return None
            return gaussian_unitary(GaussianUnitarySpec.displace(alpha), self.cutoff)

        self._null = [[displacement(-alpha) for alpha in row] for row in self.symbols]
        self._restore = [[displacement(alpha) for alpha in row] for row in self.symbols]

    def _prepare_reading(self):
        ns, cutoff = self.codebook.ns, self.cutoff
        self._codewords = [
            product_state(
                [
                    TruncatedState(
                        modes=1, cutoff=cutoff, amplitudes=reading_amplitudes(ns, theta, cutoff)
                    )
                    for theta in row
                ]
            )
            for row in self.symbols
        ]

        r = self.codebook.family.squeezing
        squeeze = squeeze2_sector(r, cutoff)
        unsqueeze = squeeze2_sector(r, cutoff, adjoint=True)
        levels = np.arange(cutoff.d)

        # In the sector, P(theta) on the signal mode is diag(exp(i k theta)).
        self._null = [
            [unsqueeze * np.exp(-1j * theta * levels)[None, :] for theta in row]
            for row in self.symbols
        ]
        self._restore = [
            [np.exp(1j * theta * levels)[:, None] * squeeze for theta in row]
            for row in self.symbols
        ]

    def _apply(self, state: TruncatedState, matrices: list) -> TruncatedState:
        for mode, matrix in enumerate(matrices):
            if matrix is not None:
                state = apply_operator(state, matrix, (mode,))
        drift = abs(state.norm() ** 2 - 1.0)
        if drift > settings.norm_drift_tolerance:
            raise CutoffTooSmall(
                f"Receiver state lost {drift:.3e} of its norm at d={self.cutoff.d}."
            )
        return state.normalized()

    def decode(
        self, m: int, rng: np.random.Generator | int | None = None, order=None
    ) -> DecodeOutcome:
        """
        Send message m and run the receiver.

        Each test consumes one uniform draw from rng, for the vacuum-or-not
        outcome.
        """
        rng = as_rng(rng)
        self.codebook.codeword(m)
        state = self._codewords[m - 1]
        steps = []
        for i in decoding_order(self.codebook.M, order):
            nulled = self._apply(state, self._null[i - 1])
            outcome = measure_vacuum_or_not(nulled, rng)
            if outcome.branch == branches.VACUUM:
                steps.append(True)
                return DecodeOutcome(
                    true_message=m, decoded=i, step_outcomes=tuple(steps), engine_id=self.engine_id
                )
            steps.append(False)
            state = self._apply(outcome.post_state, self._restore[i - 1])
        return DecodeOutcome(
            true_message=m, decoded=FAIL, step_outcomes=tuple(steps), engine_id=self.engine_id
        )


def fock_receiver(
    codebook: Codebook,
    m: int,
    cutoff: FockCutoff | None = None,
    rng: np.random.Generator | int | None = None,
    order=None,
) -> DecodeOutcome:
    """
    Physically simulate the sequential receiver on one transmission.

    See FockReceiver; prefer it directly when decoding many transmissions.
    """
    return FockReceiver(codebook, cutoff).decode(m, rng, order)
