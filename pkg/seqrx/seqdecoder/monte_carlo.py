import logging
from multiprocessing import Pool

import numpy as np

from seqrx.codec import Codebook, codeword_gram
from seqrx.constants import engines
from seqrx.errors import InvalidParams
from seqrx.fockspace import FockCutoff
from seqrx.seqdecoder.cpn import cpn_receiver
from seqrx.seqdecoder.fock_receiver import FockReceiver
from seqrx.seqdecoder.outcomes import ErrorEstimate
from seqrx.seqdecoder.span import SpanRepresentation
from seqrx.seqdecoder.trajectory import simulate_trajectory
from seqrx.utils import Timer, derive_rng

logger = logging.getLogger(__name__)


def build_engine(engine_id: str, codebook: Codebook, order=None, cutoff: FockCutoff | None = None):
    """
    Prepare a decoder for a codebook.

    Returns:
        tuple: (decode, span_method), where decode(m, rng) returns a DecodeOutcome
            and span_method names the Gram factorization (None if unused).
    """
    if engine_id == engines.GRAM:
        span = SpanRepresentation.from_gram(codeword_gram(codebook))
        return (lambda m, rng: simulate_trajectory(span, m, rng, order)), span.method
    if engine_id == engines.FOCK:
        receiver = FockReceiver(codebook, cutoff)
        return (lambda m, rng: receiver.decode(m, rng, order)), None
    if engine_id == engines.CPN:
        return (lambda m, rng: cpn_receiver(codebook, m, rng)), None
    raise InvalidParams(f"Unknown engine: {engine_id!r}. Choose from {engines.ALL}.")


def _run_trials(engine_id, codebook, seed, start, stop, order, cutoff) -> tuple[int, int]:
    """Decode trials start..stop-1 and return (errors, failures)."""
    decode, _ = build_engine(engine_id, codebook, order, cutoff)
    errors = failures = 0
    for trial in range(start, stop):
        rng = derive_rng(seed, "trial", trial)
        outcome = decode(int(rng.integers(1, codebook.M + 1)), rng)
        errors += not outcome.correct
        failures += outcome.failed
    return errors, failures


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def monte_carlo_error(
    engine_id: str,
    codebook: Codebook,
    trials: int,
    seed: int,
    workers: int = 1,
    order=None,
    cutoff: FockCutoff | None = None,
) -> ErrorEstimate:
    """
    Estimate the average error probability by simulation.

    Trial t draws its message uniformly from 1..M and all of its randomness from
    derive_rng(seed, "trial", t), so the counts do not depend on how trials are
    split over workers.

    Args:
        engine_id: engines.GRAM, engines.FOCK or engines.CPN.
        codebook: The codebook to decode.
        trials: Number of transmissions, >= 1.
        seed: Master seed of the trial streams.
        workers: Worker processes. 1 runs in-process.
        order: Optional test order for the sequential engines.
        cutoff: Optional forced cutoff for the Fock engine.

    Returns:
        ErrorEstimate: FAIL outcomes count as errors and are also reported as
            failures.
    """
    if trials < 1:
        raise InvalidParams(f"Monte Carlo needs at least one trial, got {trials}.")
    if engine_id not in engines.ALL:
        raise InvalidParams(f"Unknown engine: {engine_id!r}. Choose from {engines.ALL}.")

    tasks = [
        (engine_id, codebook, seed, start, stop, order, cutoff)
        for start, stop in _chunks(trials, max(1, workers))
    ]
    with Timer(f"{trials} {engine_id} trials", logger) as timer:
        if len(tasks) == 1:
            counts = [_run_trials(*tasks[0])]
        else:
            with Pool(processes=len(tasks)) as pool:
                counts = pool.starmap(_run_trials, tasks)

    errors = sum(count[0] for count in counts)
    failures = sum(count[1] for count in counts)
    span_method = None
    if engine_id == engines.GRAM:
        span_method = SpanRepresentation.from_gram(codeword_gram(codebook)).method
    return ErrorEstimate.from_counts(
        trials=trials,
        errors=errors,
        failures=failures,
        seed=seed,
        engine_id=engine_id,
        wall_ms=timer.milliseconds,
        span_method=span_method,
    )
