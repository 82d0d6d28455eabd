"""
Fock-space truncation.

Every state seqrx builds lives on levels 0..d-1 of each mode. The cutoff d is
picked by the leakage rule: the smallest d whose analytic tail mass (Poisson for
coherent states, geometric for thermal and two-mode squeezed states) is below
settings.leakage_tolerance. Operators are only trusted on a low-occupation
sector (levels <= d/2 unless set explicitly), so receivers ask for
receiver_cutoff(), which doubles the leakage cutoff.
"""

import logging
from dataclasses import dataclass

from scipy.special import gammainc

from seqrx import settings
from seqrx.errors import CutoffTooSmall

logger = logging.getLogger(__name__)

POISSON = "poisson"
GEOMETRIC = "geometric"


@dataclass(frozen=True)
class FockCutoff:
    """
    Per-mode basis size.

    Attributes:
        d: Number of retained levels per mode (levels 0..d-1).
        trusted: The highest level on which truncated operators must be unitary.
            Defaults to d // 2.
    """

    d: int
    trusted: int | None = None

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"A Fock cutoff needs d >= 2, got {self.d}.")
        if self.trusted is not None and not 0 <= self.trusted < self.d:
            raise ValueError(f"Trusted level {self.trusted} is outside 0..{self.d - 1}.")

    @property
    def sector(self) -> int:
        """The highest level on which truncated operators are trusted."""
        return self.d // 2 if self.trusted is None else self.trusted

    def dimension(self, modes: int) -> int:
        """The amplitude count of a state on the given number of modes."""
        return self.d**modes


def poisson_tail(mean: float, d: int) -> float:
    """
    Probability mass at levels >= d of a Poisson distribution.

    This is the leakage of a coherent state with |alpha|^2 = mean. The regularized
    lower incomplete gamma function P(d, mean) equals P(N >= d) exactly.
    """
    if mean <= 0:
        return 0.0
    return float(gammainc(d, mean))


def geometric_tail(mean: float, d: int) -> float:
    """
    Probability mass at levels >= d of the thermal (geometric) distribution.

    This is also the leakage of a two-mode squeezed vacuum, per level pair.
    """
    if mean <= 0:
        return 0.0
    return (mean / (mean + 1.0)) ** d


_TAILS = {POISSON: poisson_tail, GEOMETRIC: geometric_tail}


def tail_mass(mean: float, d: int, distribution: str = POISSON) -> float:
    try:
        return _TAILS[distribution](mean, d)
    except KeyError:
        raise ValueError(f"Unknown photon-number distribution: {distribution}")


def check_leakage(mean: float, cutoff: FockCutoff, distribution: str = POISSON):
    """
    Raise CutoffTooSmall if a state with the given mean leaks past the cutoff.

    Args:
        mean: Mean photon number of the state being built.
        cutoff: The cutoff the state is built at.
        distribution: POISSON or GEOMETRIC.
    """
    tail = tail_mass(mean, cutoff.d, distribution)
    if tail > settings.leakage_tolerance:
        raise CutoffTooSmall(
            f"Cutoff d={cutoff.d} leaks {tail:.3e} of a {distribution} distribution "
            f"with mean {mean:g} (tolerance {settings.leakage_tolerance:g})."
        )


def leakage_cutoff(
    mean: float,
    distribution: str = POISSON,
    tolerance: float = settings.leakage_tolerance,
) -> FockCutoff:
    """
    The smallest cutoff whose tail mass is below tolerance.

    Args:
        mean: Mean photon number.
        distribution: POISSON for coherent states, GEOMETRIC for thermal and
            two-mode squeezed states.
        tolerance: Maximum allowed tail mass.

    Returns:
        FockCutoff: The smallest admissible cutoff (at least 2).

    Raises:
        CutoffTooSmall: If no cutoff up to settings.max_cutoff suffices.
    """
    for d in range(2, settings.max_cutoff + 1):
        if tail_mass(mean, d, distribution) < tolerance:
            return FockCutoff(d)
    raise CutoffTooSmall(
        f"No cutoff up to {settings.max_cutoff} contains a {distribution} "
        f"distribution with mean {mean:g}."
    )


def receiver_cutoff(mean: float, distribution: str = POISSON) -> FockCutoff:
    """
    Starting cutoff for receiver simulations.

    Doubles the leakage cutoff L and trusts levels <= L, so every state the
    receiver handles keeps its support where truncated operators are unitary.
    Receivers then widen d with operators.fit_cutoff until the operators they
    apply meet the unitarity tolerance on those levels.
    """
    level = leakage_cutoff(mean, distribution).d
    return FockCutoff(2 * level, trusted=level)
