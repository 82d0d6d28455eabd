"""
Exact checks of the typical set of an i.i.d. source.

Sequences with the same symbol counts (the same type) share their probability
and sample entropy, so the typical set is enumerated one type class at a time:
a binary source at n = 20 has 21 classes instead of 2^20 sequences.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.special import gammaln, xlogy

from seqrx import settings
from seqrx.errors import EnumerationTooLarge, InvalidParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class TypicalityParams:
    """
    A source and the typical set to check.

    Attributes:
        p: The symbol distribution.
        n: Sequence length.
        delta: Typicality slack on the sample entropy, > 0.
        epsilon: Target failure probability, in (0, 1).
    """

    p: tuple[float, ...]
    n: int
    delta: float
    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(float(value) for value in self.p))
        if not self.p or min(self.p) < 0 or abs(sum(self.p) - 1.0) > 1e-12:
            raise InvalidParams(f"{self.p} is not a probability distribution.")
        if self.n < 1:
            raise InvalidParams(f"Sequence length must be >= 1, got {self.n}.")
        if self.delta <= 0:
            raise InvalidParams(f"delta must be > 0, got {self.delta}.")
        if not 0.0 < self.epsilon < 1.0:
            raise InvalidParams(f"epsilon must be in (0, 1), got {self.epsilon}.")

    @property
    def entropy_bits(self) -> float:
        return float(-np.sum(xlogy(self.p, self.p)) / np.log(2))


@dataclass(frozen=True, kw_only=True)
class TypicalityReport:
    """
    The three properties of the typical set T.

    Attributes:
        params: What was checked.
        classes: Number of type classes enumerated.
        size: |T|, exactly.
        mass: P(X^n in T).
        log2_size: log2 |T|.
        lowest_exponent, highest_exponent: The extreme values of -log2 p(x^n) / n
            over T. NaN when T is empty.
    """

    params: TypicalityParams = field(repr=False)
    classes: int
    size: int
    mass: float
    log2_size: float
    lowest_exponent: float
    highest_exponent: float

    @property
    def mass_ok(self) -> bool:
        """P(T) >= 1 - epsilon at this n."""
        return self.mass >= 1.0 - self.params.epsilon

    @property
    def size_ok(self) -> bool:
        """|T| <= 2^(n (H + delta))."""
        bound = self.params.n * (self.params.entropy_bits + self.params.delta)
        return self.size == 0 or self.log2_size <= bound + settings.bound_slack

    @property
    def probability_ok(self) -> bool:
        """Every member has probability in [2^(-n (H + delta)), 2^(-n (H - delta))]."""
        if self.size == 0:
            return True
        entropy, delta = self.params.entropy_bits, self.params.delta
        return (
            self.lowest_exponent >= entropy - delta - settings.bound_slack
            and self.highest_exponent <= entropy + delta + settings.bound_slack
        )


def compositions(n: int, parts: int):
    """Yield every way of writing n as an ordered sum of parts non-negative integers."""
    for bars in combinations(range(n + parts - 1), parts - 1):
        edges = (-1, *bars, n + parts - 1)
        yield tuple(edges[i + 1] - edges[i] - 1 for i in range(parts))


def typicality_report(params: TypicalityParams) -> TypicalityReport:
    """
    Enumerate the typical set {x^n : |-log2 p(x^n) / n - H| <= delta}.

    Symbols of zero probability never appear in a typical sequence and are left
    out of the enumeration.

    Raises:
        EnumerationTooLarge: If there are more type classes than
            settings.typicality_enumeration_limit.
    """
    probabilities = np.array([value for value in params.p if value > 0])
    n, parts = params.n, probabilities.size
    classes = math.comb(n + parts - 1, parts - 1)
    if classes > settings.typicality_enumeration_limit:
        raise EnumerationTooLarge(
            f"{classes} type classes exceed the limit of "
            f"{settings.typicality_enumeration_limit}."
        )

    entropy = params.entropy_bits
    log2_p = np.log2(probabilities)
    size, mass = 0, 0.0
    exponents = []
    for counts in compositions(n, parts):
        counts = np.array(counts)
        exponent = -float(counts @ log2_p) / n
        if abs(exponent - entropy) > params.delta:
            continue
        log_count = gammaln(n + 1) - np.sum(gammaln(counts + 1))
        size += math.factorial(n) // math.prod(math.factorial(int(c)) for c in counts)
        mass += float(np.exp(log_count - n * exponent * np.log(2)))
        exponents.append(exponent)

    logger.debug("Typical set at n=%s: %s sequences, mass %s.", n, size, mass)
    return TypicalityReport(
        params=params,
        classes=classes,
        size=size,
        mass=min(1.0, mass),
        log2_size=math.log2(size) if size else float("-inf"),
        lowest_exponent=min(exponents, default=float("nan")),
        highest_exponent=max(exponents, default=float("nan")),
    )
