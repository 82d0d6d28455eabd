import logging
from dataclasses import dataclass

from seqrx import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundReport:
    """
    Both sides of an inequality lhs <= rhs.

    Attributes:
        lhs: The bounded quantity.
        rhs: The bound.
    """

    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def satisfied(self) -> bool:
        """Whether lhs <= rhs up to settings.bound_slack."""
        return self.slack >= -settings.bound_slack
