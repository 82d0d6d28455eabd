import numpy as np
import pytest
from hypothesis import settings as hypothesis_settings

from seqrx.codec import Codebook
from seqrx.constants import families, priors
from seqrx.ensembles import StateFamily
from seqrx.utils import derive_rng

hypothesis_settings.register_profile("seqrx", max_examples=25, deadline=None)
hypothesis_settings.load_profile("seqrx")


def within_sigmas(count: int, trials: int, p: float, sigmas: float = 4.0) -> bool:
    """Whether count successes out of trials is consistent with probability p."""
    spread = sigmas * np.sqrt(max(p * (1.0 - p), 1e-12) / trials)
    return abs(count / trials - p) <= spread + 1.0 / trials


def coherent_codebook(symbols, ns: float = 1.0, prior: str = priors.BPSK_AMP) -> Codebook:
    symbols = np.atleast_2d(np.array(symbols, dtype=complex))
    return Codebook(
        family=StateFamily(families.COHERENT, ns),
        prior=prior,
        n=symbols.shape[1],
        M=symbols.shape[0],
        symbols=symbols,
    )


def reading_codebook(phases, ns: float) -> Codebook:
    phases = np.atleast_2d(np.array(phases, dtype=float))
    return Codebook(
        family=StateFamily(families.READING_III, ns),
        prior=priors.BPSK_PHASE,
        n=phases.shape[1],
        M=phases.shape[0],
        symbols=phases,
    )


@pytest.fixture
def antipodal() -> Codebook:
    """The M=2, n=1 BPSK codebook {|+1/2>, |-1/2>}, ns = 0.25."""
    return coherent_codebook([[0.5], [-0.5]], ns=0.25)


@pytest.fixture
def rng() -> np.random.Generator:
    return derive_rng(2024, "tests")
