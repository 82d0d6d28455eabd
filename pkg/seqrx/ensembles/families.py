import logging
from dataclasses import dataclass

import numpy as np

from seqrx.constants import families
from seqrx.errors import InvalidParams, UnknownFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StateFamily:
    """
    A family of single-symbol states.

    Attributes:
        tag: families.COHERENT, families.READING_II or families.READING_III.
        ns: Mean photon number of the probe. Reading families need it; the
            coherent family only uses it for phase averaging.
    """

    tag: str
    ns: float = 0.0

    def __post_init__(self):
        if self.tag not in families.ALL:
            raise UnknownFamily(f"Unknown state family: {self.tag!r}")
        if self.ns < 0 or not np.isfinite(self.ns):
            raise InvalidParams(f"Mean photon number must be >= 0, got {self.ns}.")

    @property
    def is_reading(self) -> bool:
        return self.tag in families.READING

    @property
    def modes_per_symbol(self) -> int:
        """Reading Type-III cells are probed with a signal-idler pair."""
        return 2 if self.tag == families.READING_III else 1

    @property
    def squeezing(self) -> float:
        """The two-mode squeezing strength r with sinh(r)^2 = ns."""
        return float(np.arcsinh(np.sqrt(self.ns)))


def as_family(family: "StateFamily | str", ns: float | None = None) -> StateFamily:
    """Accept a StateFamily or a bare tag (with an optional ns)."""
    if isinstance(family, StateFamily):
        if ns is not None and ns != family.ns:
            return StateFamily(family.tag, ns)
        return family
    return StateFamily(family, 0.0 if ns is None else ns)
