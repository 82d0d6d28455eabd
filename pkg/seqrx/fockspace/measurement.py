import logging
from dataclasses import dataclass, field

import numpy as np

from seqrx import settings
from seqrx.constants import branches
from seqrx.errors import DegenerateBranch, InvalidState
from seqrx.fockspace.states import TruncatedState
from seqrx.utils import as_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True, eq=False)
class MeasurementOutcome:
    """
    One branch of the vacuum-or-not measurement.

    Attributes:
        branch: branches.VACUUM or branches.NOT_VACUUM.
        probability: The Born probability of the branch.
        post_state: The normalized post-measurement state.

    Raises (on post_state access):
        DegenerateBranch: If the not-vacuum branch has probability below
            settings.degenerate_branch_threshold.
    """

    branch: str
    probability: float
    _post_state: TruncatedState | None = field(default=None, repr=False)

    @property
    def post_state(self) -> TruncatedState:
        if self._post_state is None:
            raise DegenerateBranch(
                f"The {self.branch} branch has probability {self.probability:.3e}; "
                f"its post-measurement state is undefined."
            )
        return self._post_state


def vacuum_or_not(state: TruncatedState) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """
    Measure {|0><0|^(x)n, I - |0><0|^(x)n} on a normalized multimode state.

    Args:
        state: The state measured.

    Returns:
        tuple: (vacuum outcome, not-vacuum outcome). The vacuum post-state is the
            all-modes vacuum; the not-vacuum post-state is
            (|psi> - c|0...0>) / sqrt(1 - |c|^2) with c = <0...0|psi>.

    Raises:
        InvalidState: If the state is not normalized.
    """
    if not state.is_normalized():
        raise InvalidState(f"vacuum_or_not needs a normalized state, norm^2={state.norm() ** 2!r}.")

    c = state.amplitudes[0]
    p_vacuum = min(1.0, float(abs(c) ** 2))
    p_rest = 1.0 - p_vacuum

    vacuum = MeasurementOutcome(
        branch=branches.VACUUM,
        probability=p_vacuum,
        _post_state=TruncatedState.vacuum(state.modes, state.cutoff) if p_vacuum > 0 else None,
    )

    rest_state = None
    if p_rest >= settings.degenerate_branch_threshold:
        amplitudes = state.amplitudes.copy()
        amplitudes[0] = 0.0
        rest_state = state.with_amplitudes(amplitudes / np.sqrt(p_rest))
    not_vacuum = MeasurementOutcome(
        branch=branches.NOT_VACUUM, probability=p_rest, _post_state=rest_state
    )
    return vacuum, not_vacuum


def measure_vacuum_or_not(
    state: TruncatedState, rng: np.random.Generator | int | None = None
) -> MeasurementOutcome:
    """Sample one branch of vacuum_or_not with its post-measurement state."""
    vacuum, not_vacuum = vacuum_or_not(state)
    if as_rng(rng).random() < vacuum.probability:
        return vacuum
    return not_vacuum
