"""
Codeword vectors in an orthonormal basis of their own span.

Every operator the sequential decoder applies is a codeword projector or its
complement, and these keep the span invariant. So a decoding run never leaves
the (at most) M-dimensional span, and each codeword can be written as a row of
a factor L with G = L L^dag.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from seqrx import settings
from seqrx.codec import GramMatrix
from seqrx.errors import IndexOutOfRange, NotPositiveSemidefinite
from seqrx.utils import frozen

logger = logging.getLogger(__name__)

CHOLESKY = "cholesky"
EIGH = "eigh"
AUTO = "auto"


@dataclass(frozen=True, eq=False)
class SpanRepresentation:
    """
    Codeword states as coordinate vectors in an orthonormal span basis.

    Attributes:
        factor: M x r matrix L with G = L L^dag. Read-only.
        method: CHOLESKY or EIGH, whichever produced the factor.

    Methods:
        from_gram: Factor a Gram matrix.
        vector: The coordinate vector of one codeword.
    """

    factor: np.ndarray = field(repr=False)
    method: str = EIGH

    @classmethod
    def from_gram(cls, gram: GramMatrix, method: str = AUTO) -> "SpanRepresentation":
        """
        Factor G = L L^dag.

        Args:
            gram: The codebook's Gram matrix.
            method: CHOLESKY, EIGH or AUTO. AUTO uses Cholesky when the floored
                spectrum has condition number below settings.cholesky_max_condition,
                and the eigendecomposition otherwise or if Cholesky fails.

        Raises:
            NotPositiveSemidefinite: If G is not PSD up to the floor, or the factor
                does not reproduce G within settings.span_tolerance.
        """
        eigenvalues, eigenvectors = gram.conditioned_spectrum()
        factor = None

        well_conditioned = eigenvalues[-1] / eigenvalues[0] < settings.cholesky_max_condition
        if method == CHOLESKY or (method == AUTO and well_conditioned):
            try:
                factor, method = np.linalg.cholesky(gram.entries), CHOLESKY
            except np.linalg.LinAlgError:
                logger.debug("Cholesky failed on an M=%s Gram matrix; using eigh.", gram.M)
        if factor is None:
            factor, method = eigenvectors * np.sqrt(eigenvalues), EIGH

        residual = np.max(np.abs(factor @ factor.conj().T - gram.entries))
        if residual > settings.span_tolerance:
            raise NotPositiveSemidefinite(
                f"Span factor reproduces G only to {residual:.3e} "
                f"(tolerance {settings.span_tolerance:g})."
            )
        return cls(frozen(np.array(factor, dtype=complex)), method)

    @property
    def M(self) -> int:
        return self.factor.shape[0]

    def vector(self, m: int) -> np.ndarray:
        """
        The coordinates of codeword m (1-indexed), conj(L[m-1]).

        Raises:
            IndexOutOfRange: If m is outside 1..M.
        """
        if not 1 <= m <= self.M:
            raise IndexOutOfRange(f"Message {m} is outside 1..{self.M}.")
        return self.factor[m - 1].conj()


def decoding_order(M: int, order=None) -> list[int]:
    """
    The order the decoder asks its questions in, as 1-indexed messages.

    Raises:
        IndexOutOfRange: If order is not a permutation of 1..M.
    """
    if order is None:
        return list(range(1, M + 1))
    order = [int(message) for message in order]
    if sorted(order) != list(range(1, M + 1)):
        raise IndexOutOfRange(f"Test order {order} is not a permutation of 1..{M}.")
    return order
