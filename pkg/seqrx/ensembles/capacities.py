"""
Closed-form capacities of the pure-loss bosonic channel, in bits per channel use.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from seqrx.errors import InvalidParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class ChannelParams:
    """
    A pure-loss channel and its input energy constraint.

    Attributes:
        eta: Transmissivity in [0, 1].
        ns: Mean photon number per channel use at the input, ns >= 0.
    """

    eta: float = 1.0
    ns: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise InvalidParams(f"Transmissivity must be in [0, 1], got {self.eta}.")
        if self.ns < 0 or not np.isfinite(self.ns):
            raise InvalidParams(f"Mean photon number must be >= 0, got {self.ns}.")

    @property
    def received_ns(self) -> float:
        """Mean photon number reaching the receiver."""
        return self.eta * self.ns


def g_capacity(x: float) -> float:
    """
    g(x) = (x+1) log2(x+1) - x log2(x), with g(0) = 0.

    This is the entropy of a thermal state with mean photon number x, and the
    Holevo capacity of a lossless channel at mean input energy x.
    """
    if x < 0:
        raise InvalidParams(f"g(x) needs x >= 0, got {x}.")
    return float((xlogy(x + 1.0, x + 1.0) - xlogy(x, x)) / np.log(2))


def binary_entropy(p: float) -> float:
    """H2(p) = -p log2 p - (1-p) log2 (1-p)."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParams(f"A probability must be in [0, 1], got {p}.")
    return float(-(xlogy(p, p) + xlogy(1.0 - p, 1.0 - p)) / np.log(2))


def bpsk_capacity(ns: float) -> float:
    """
    Holevo information of the equiprobable BPSK coherent ensemble {|+a>, |-a>}.

    C = H2((1 + exp(-2 ns)) / 2), with ns = |a|^2. H2 is symmetric about 1/2, so
    the sign in front of the exponential does not matter.
    """
    if ns < 0:
        raise InvalidParams(f"Mean photon number must be >= 0, got {ns}.")
    return binary_entropy((1.0 + np.exp(-2.0 * ns)) / 2.0)


def bpsk_average_spectrum(ns: float) -> np.ndarray:
    """Eigenvalues (1 +/- exp(-2 ns)) / 2 of the BPSK ensemble's average state."""
    overlap = np.exp(-2.0 * ns)
    return np.array([(1.0 + overlap) / 2.0, (1.0 - overlap) / 2.0])


def holevo_capacity(params: ChannelParams) -> float:
    """Classical capacity g(eta ns) of the pure-loss channel."""
    return g_capacity(params.received_ns)


def private_capacity(params: ChannelParams) -> float:
    """
    Private classical capacity g(eta ns) - g((1 - eta) ns).

    Negative values (eta < 1/2) are returned as computed.
    """
    return g_capacity(params.eta * params.ns) - g_capacity((1.0 - params.eta) * params.ns)
