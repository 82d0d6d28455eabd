import logging
from dataclasses import dataclass, field

import numpy as np

from seqrx import settings
from seqrx.codec.codebook import Codebook
from seqrx.ensembles import analytic_overlap, codeword_state
from seqrx.errors import BudgetExceeded, InvalidParams, NotPositiveSemidefinite
from seqrx.fockspace import FockCutoff
from seqrx.utils import frozen, is_hermitian

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """
    The inner products G[i, j] = <phi_i|phi_j> of M codeword states.

    Attributes:
        entries: Hermitian M x M matrix with unit diagonal. Read-only.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.size == 0:
            raise InvalidParams(f"A Gram matrix must be square, got shape {entries.shape}.")
        if not is_hermitian(entries, settings.gram_hermitian_tolerance):
            raise InvalidParams("Gram matrix is not Hermitian.")
        if np.max(np.abs(entries.diagonal() - 1.0)) > settings.gram_hermitian_tolerance:
            raise InvalidParams("Gram matrix of normalized states needs a unit diagonal.")
        object.__setattr__(self, "entries", frozen(entries))

    @property
    def M(self) -> int:
        return self.entries.shape[0]

    def conditioned_spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Eigen-decomposition with the conditioning floor applied.

        Eigenvalues in [-gram_floor, gram_floor] are raised to gram_floor.

        Returns:
            tuple: (eigenvalues ascending, eigenvectors as columns).

        Raises:
            NotPositiveSemidefinite: If an eigenvalue is below -gram_floor.
        """
        eigenvalues, eigenvectors = np.linalg.eigh(self.entries)
        if eigenvalues[0] < -settings.gram_floor:
            raise NotPositiveSemidefinite(
                f"Gram matrix has eigenvalue {eigenvalues[0]:.3e}, below "
                f"-{settings.gram_floor:g}."
            )
        return np.maximum(eigenvalues, settings.gram_floor), eigenvectors


def codeword_gram(codebook: Codebook) -> GramMatrix:
    """
    The Gram matrix of a codebook's received codeword states.

    Codewords are product states, so each entry is the product of the symbol
    overlaps along the block.
    """
    symbols = codebook.received_symbols
    overlaps = analytic_overlap(codebook.family, symbols[:, None, :], symbols[None, :, :])
    entries = np.prod(overlaps, axis=2)
    return GramMatrix((entries + entries.conj().T) / 2)


def explicit_gram(codebook: Codebook, cutoff: FockCutoff) -> GramMatrix:
    """
    The Gram matrix computed from explicitly constructed Fock-space codewords.

    Raises:
        BudgetExceeded: If a codeword needs more than settings.fock_amplitude_budget
            amplitudes.
        CutoffTooSmall: If a symbol state leaks past the cutoff.
    """
    modes = codebook.n * codebook.family.modes_per_symbol
    if cutoff.dimension(modes) > settings.fock_amplitude_budget:
        raise BudgetExceeded(
            f"{modes} modes at d={cutoff.d} exceed the budget of "
            f"{settings.fock_amplitude_budget} amplitudes."
        )
    states = np.stack(
        [
            codeword_state(codebook.family, codebook.codeword(m), cutoff).amplitudes
            for m in range(1, codebook.M + 1)
        ],
        axis=1,
    )
    entries = states.conj().T @ states
    return GramMatrix((entries + entries.conj().T) / 2)


def holevo_information(gram: GramMatrix) -> float:
    """
    Entropy in bits of the uniform mixture of the codeword states.

    The mixture (1/M) sum |phi_i><phi_i| shares its nonzero spectrum with G / M.
    """
    eigenvalues = np.linalg.eigvalsh(gram.entries / gram.M)
    eigenvalues = eigenvalues[eigenvalues >= settings.entropy_floor]
    return float(max(0.0, -np.sum(eigenvalues * np.log2(eigenvalues))))
