"""
Randomized sweeps of the inequality checks, and the cross-check of the union
bound against the exact sequential decoder.
"""

import logging
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from seqrx import settings
from seqrx.bounds.lemmas import gentle_operator_gap, sen_bound_gap, trace_lemma_gap
from seqrx.bounds.report import BoundReport
from seqrx.bounds.sampling import (
    random_density_matrix,
    random_effect,
    random_projector,
)
from seqrx.codec import Codebook, codeword_gram
from seqrx.ensembles import codeword_state
from seqrx.errors import BudgetExceeded, InvalidParams
from seqrx.fockspace import POISSON, FockCutoff, GEOMETRIC, leakage_cutoff
from seqrx.seqdecoder import gram_chain_success
from seqrx.utils import Timer, derive_rng

logger = logging.getLogger(__name__)

SEN = "sen"
GENTLE = "gentle"
TRACE = "trace"
TYPICALITY = "typicality"
SAMPLED = (SEN, GENTLE, TRACE)

MAX_PROJECTORS = 5
MAX_ENSEMBLE = 4


@dataclass(frozen=True)
class SuiteReport:
    """
    The outcome of one randomized sweep.

    Attributes:
        name: The suite.
        samples: Number of random instances checked.
        violations: Instances with slack below -settings.bound_slack.
        worst_slack: The smallest slack seen.
    """

    name: str
    samples: int
    violations: int
    worst_slack: float


def _sen_instance(dim: int, rng: np.random.Generator) -> BoundReport:
    sigma = random_density_matrix(dim, rng) * rng.uniform(0.0, 1.0)
    count = int(rng.integers(1, MAX_PROJECTORS + 1))
    return sen_bound_gap(sigma, [random_projector(dim, rng) for _ in range(count)])


def _gentle_instance(dim: int, rng: np.random.Generator) -> BoundReport:
    size = int(rng.integers(1, MAX_ENSEMBLE + 1))
    weights = rng.dirichlet(np.ones(size))
    ensemble = [(weight, random_density_matrix(dim, rng)) for weight in weights]
    return gentle_operator_gap(ensemble, random_effect(dim, rng))


def _trace_instance(dim: int, rng: np.random.Generator) -> BoundReport:
    rho, sigma = random_density_matrix(dim, rng), random_density_matrix(dim, rng)
    return trace_lemma_gap(rho, sigma, random_effect(dim, rng))


_INSTANCES = {SEN: _sen_instance, GENTLE: _gentle_instance, TRACE: _trace_instance}


def _run_samples(name: str, dim: int, seed: int, start: int, stop: int) -> tuple[int, float]:
    violations, worst = 0, np.inf
    for sample in range(start, stop):
        rng = derive_rng(seed, name, sample)
        report = _INSTANCES[name](int(rng.integers(2, dim + 1)), rng)
        violations += not report.satisfied
        worst = min(worst, report.slack)
    return violations, worst


def run_suite(name: str, samples: int, dim: int, seed: int, workers: int = 1) -> SuiteReport:
    """
    Check an inequality on random instances.

    Sample s has dimension drawn from 2..dim and all randomness from
    derive_rng(seed, name, s), so results do not depend on the worker count.

    Args:
        name: SEN, GENTLE or TRACE.
        samples: Number of instances.
        dim: Largest Hilbert space dimension, >= 2.
        seed: Master seed.
        workers: Worker processes.
    """
    if name not in _INSTANCES:
        raise InvalidParams(f"Unknown suite {name!r}. Choose from {SAMPLED}.")
    if samples < 1 or dim < 2:
        raise InvalidParams(f"Need samples >= 1 and dim >= 2, got {samples} and {dim}.")

    bounds = np.linspace(0, samples, max(1, workers) + 1).astype(int)
    tasks = [(name, dim, seed, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
    with Timer(f"{samples} {name} instances", logger):
        if len(tasks) == 1:
            results = [_run_samples(*tasks[0])]
        else:
            with Pool(processes=len(tasks)) as pool:
                results = pool.starmap(_run_samples, tasks)

    return SuiteReport(
        name=name,
        samples=samples,
        violations=sum(result[0] for result in results),
        worst_slack=float(min(result[1] for result in results)),
    )


@dataclass(frozen=True)
class SequentialChainReport:
    """
    The union bound applied to the exact decoder chain of one message.

    Attributes:
        sen: The union bound with sigma = phi_m and the projectors
            (I - phi_1), ..., (I - phi_(m-1)), phi_m.
        chain_error: 1 - gram_chain_success for the same message.
    """

    sen: BoundReport
    chain_error: float

    @property
    def discrepancy(self) -> float:
        """|lhs - chain_error|; both sides describe the same decoder."""
        return abs(self.sen.lhs - self.chain_error)

    @property
    def consistent(self) -> bool:
        return self.discrepancy <= settings.unitarity_tolerance


def sequential_chain_report(
    codebook: Codebook, m: int, cutoff: FockCutoff | None = None
) -> SequentialChainReport:
    """
    Build the decoder's projectors in Fock space and feed them to the union bound.

    The left side of the bound then equals the decoder's error on message m, and
    is compared with the span-based 1 - gram_chain_success.

    Args:
        codebook: A codebook small enough for dense operators on its modes.
        m: The message, 1..M.
        cutoff: Per-mode cutoff. Defaults to a leakage cutoff at 1e-12.

    Raises:
        BudgetExceeded: If the dense operators would exceed
            settings.dense_operator_limit rows.
    """
    codebook.codeword(m)
    family = codebook.family
    if cutoff is None:
        if family.is_reading:
            cutoff = leakage_cutoff(family.ns, GEOMETRIC, tolerance=1e-12)
        else:
            mean = float(np.max(np.abs(codebook.received_symbols)) ** 2)
            cutoff = leakage_cutoff(mean, POISSON, tolerance=1e-12)

    dimension = cutoff.dimension(codebook.n * family.modes_per_symbol)
    if dimension > settings.dense_operator_limit:
        raise BudgetExceeded(
            f"Dense operators of dimension {dimension} exceed "
            f"{settings.dense_operator_limit}."
        )

    vectors = [codeword_state(family, codebook.codeword(i), cutoff).amplitudes for i in range(1, m + 1)]
    projections = [np.outer(vector, vector.conj()) for vector in vectors]
    identity = np.eye(dimension)
    chain = [identity - projection for projection in projections[:-1]] + [projections[-1]]

    return SequentialChainReport(
        sen=sen_bound_gap(projections[-1], chain),
        chain_error=1.0 - gram_chain_success(codeword_gram(codebook), m),
    )
