import json
import logging
import os
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field, fields
from itertools import product
from multiprocessing import Pool
from pathlib import Path

import numpy as np
import pandas as pd

from seqrx import settings
from seqrx.codec import Codebook, apply_loss, codeword_gram, generate_codebook
from seqrx.constants import engines, families, priors
from seqrx.errors import InvalidParams
from seqrx.seqdecoder import ErrorEstimate, average_error_exact, expurgate, monte_carlo_error
from seqrx.utils import Timer, derive_seed

logger = logging.getLogger(__name__)

RESULT_COLUMNS = (
    "engine",
    "family",
    "prior",
    "n",
    "M",
    "rate_bits",
    "ns",
    "eta",
    "trials",
    "err_mean",
    "err_ci_lo",
    "err_ci_hi",
    "exact_err",
    "seed",
    "wall_ms",
)


@dataclass(kw_only=True)
class SweepConfig:
    """
    A grid of simulation points.

    Points are every combination of the axes, in lexicographic order of
    (n, M or rate, ns, eta). Each point averages over `codebooks` random
    codebooks.

    Attributes:
        n: Blocklengths.
        M: Message counts. Exactly one of M and rate is given.
        rate: Rates in bits per use. A point at rate R has M = round(2^(n R)).
        ns: Mean photon numbers (coherent) or probe energies (reading).
        eta: Channel transmissivities. Must be [1.0] for reading families.
        family: State family tag.
        prior: Prior tag.
        engine_id: Decoding engine.
        trials: Monte Carlo trials per codebook.
        seed: Master seed. Every other seed derives from it.
        output: CSV path. Relative paths resolve against settings.output_dir.
        codebooks: Random codebooks per point.
        exact: Also compute the exact sequential-decoder error from the Gram matrix.
        expurgate: Fraction of worst messages to drop before decoding, if any.
        order: Test order for the sequential engines, 1-indexed.
        workers: Worker processes over points.
        record_timing: Write wall-clock times. Off by default so reruns are
            byte-identical.

    Methods:
        to_file: Write the config as JSON.
        from_file: Load a config written by to_file.
    """

    n: list[int]
    ns: list[float]
    M: list[int] | None = None
    rate: list[float] | None = None
    eta: list[float] = field(default_factory=lambda: [1.0])
    family: str = families.COHERENT
    prior: str = priors.BPSK_AMP
    engine_id: str = engines.GRAM
    trials: int = 1000
    seed: int = settings.default_seed
    output: str = "sweep.csv"
    codebooks: int = 1
    exact: bool = False
    expurgate: float | None = None
    order: list[int] | None = None
    workers: int = settings.workers
    record_timing: bool = False

    def __post_init__(self):
        if (self.M is None) == (self.rate is None):
            raise InvalidParams("Give exactly one of the M and rate axes.")
        for name in ("n", "ns", "eta", "M" if self.rate is None else "rate"):
            if not getattr(self, name):
                raise InvalidParams(f"The {name} axis is empty.")
        if self.trials < 1:
            raise InvalidParams(f"Sweeps need trials >= 1, got {self.trials}.")
        if self.codebooks < 1:
            raise InvalidParams(f"Sweeps need codebooks >= 1, got {self.codebooks}.")
        if self.family not in families.ALL:
            raise InvalidParams(f"Unknown family: {self.family!r}.")
        if self.prior not in priors.ALL:
            raise InvalidParams(f"Unknown prior: {self.prior!r}.")
        if self.engine_id not in engines.ALL:
            raise InvalidParams(f"Unknown engine: {self.engine_id!r}.")
        if self.family in families.READING and any(eta != 1.0 for eta in self.eta):
            raise InvalidParams("Reading codebooks are not sent through a lossy channel.")
        if self.order is not None and self.expurgate:
            raise InvalidParams("A test order cannot be combined with expurgation.")

    def points(self) -> list[tuple[int, int, float, float]]:
        """Every (n, M, ns, eta) of the grid, in output order."""
        if self.rate is not None:
            sizes = [(n, max(1, round(2 ** (n * rate)))) for n in self.n for rate in self.rate]
        else:
            sizes = list(product(self.n, self.M))
        return [(n, M, ns, eta) for (n, M), ns, eta in product(sizes, self.ns, self.eta)]

    def to_file(self, filepath: str) -> None:
        """
        Write the config to a JSON file.

        Args:
            filepath: The path to the file to write to.
        """
        with open(filepath, "w") as file:
            json.dump(asdict(self), file, indent=3)

    @classmethod
    def from_file(cls, filepath: str) -> "SweepConfig":
        """
        Load a SweepConfig from a JSON file.

        Args:
            filepath: The path to the file to read from.

        Raises:
            InvalidParams: If the file cannot be read or holds unknown keys.
        """
        try:
            with open(filepath, "r") as file:
                data = json.load(file)
        except (OSError, ValueError) as error:
            raise InvalidParams(f"Cannot load sweep config {filepath}: {error}") from error
        if not isinstance(data, dict):
            raise InvalidParams(f"Sweep config {filepath} is not a JSON object.")
        known = {item.name for item in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParams(f"Unknown config keys: {sorted(unknown)}.")
        try:
            return cls(**data)
        except TypeError as error:
            raise InvalidParams(f"Incomplete sweep config {filepath}: {error}") from error


@dataclass(frozen=True, kw_only=True)
class ResultRow:
    """
    One CSV row: the error of one engine at one grid point.

    exact_err is NaN, written as an empty field, unless the exact error was
    requested.
    """

    engine: str
    family: str
    prior: str
    n: int
    M: int
    rate_bits: float
    ns: float
    eta: float
    trials: int
    err_mean: float
    err_ci_lo: float
    err_ci_hi: float
    exact_err: float
    seed: int
    wall_ms: float


def point_codebook(config: SweepConfig, index: int, replica: int, n: int, M: int, ns: float, eta: float) -> Codebook:
    """The codebook that replica `replica` of point `index` decodes, after loss and expurgation."""
    codebook = generate_codebook(
        config.prior, config.family, n, M, ns, seed=derive_seed(config.seed, "codebook", index, replica)
    )
    if eta != 1.0:
        codebook = apply_loss(codebook, eta)
    if config.expurgate:
        codebook = expurgate(codebook, config.expurgate)
    return codebook


def evaluate_codebooks(config: SweepConfig, index: int, codebooks: list[Codebook]) -> ResultRow:
    """
    Decode the replica codebooks of one point and summarize them in a row.

    Counts from every replica are pooled before the Wilson interval is taken;
    exact_err is the mean over replicas. The row's n, M, ns and eta are those
    of the first codebook.
    """
    errors = failures = 0
    wall_ms = 0.0
    exact = []
    for replica, codebook in enumerate(codebooks):
        estimate = monte_carlo_error(
            config.engine_id,
            codebook,
            config.trials,
            seed=derive_seed(config.seed, "trials", index, replica),
            order=config.order,
        )
        errors += estimate.errors
        failures += estimate.failures
        wall_ms += estimate.wall_ms
        if config.exact:
            exact.append(average_error_exact(codeword_gram(codebook), config.order))

    trials = config.trials * len(codebooks)
    pooled = ErrorEstimate.from_counts(
        trials=trials, errors=errors, failures=failures, seed=config.seed, engine_id=config.engine_id
    )
    first = codebooks[0]
    logger.info("Point %s (n=%s, M=%s): error %s.", index, first.n, first.M, pooled.p_hat)
    return ResultRow(
        engine=config.engine_id,
        family=first.family.tag,
        prior=first.prior,
        n=first.n,
        M=first.M,
        rate_bits=first.rate,
        ns=first.ns,
        eta=first.eta,
        trials=trials,
        err_mean=pooled.p_hat,
        err_ci_lo=pooled.ci95[0],
        err_ci_hi=pooled.ci95[1],
        exact_err=float(np.mean(exact)) if exact else float("nan"),
        seed=config.seed,
        wall_ms=round(wall_ms, 3) if config.record_timing else 0.0,
    )


def evaluate_point(config: SweepConfig, index: int, n: int, M: int, ns: float, eta: float) -> ResultRow:
    """Simulate point `index` of a sweep over config.codebooks fresh codebooks."""
    codebooks = [
        point_codebook(config, index, replica, n, M, ns, eta) for replica in range(config.codebooks)
    ]
    return evaluate_codebooks(config, index, codebooks)


def results_frame(rows: list[ResultRow]) -> pd.DataFrame:
    return pd.DataFrame([asdict(row) for row in rows], columns=list(RESULT_COLUMNS))


def results_csv(rows: list[ResultRow], header: bool = True) -> str:
    """Rows as CSV text: LF line endings, 9 significant digits."""
    return results_frame(rows).to_csv(
        index=False, header=header, lineterminator="\n", float_format=settings.csv_float_format
    )


def resolve_output(output: str | os.PathLike) -> Path:
    path = Path(output)
    return path if path.is_absolute() else settings.output_dir / path


def write_results(rows: Iterable[ResultRow], output: str | os.PathLike) -> Path:
    """
    Write rows to a CSV file as they arrive.

    Each row is appended to <output>.partial, which is renamed to <output> once
    every row is written. If a row fails, the .partial file keeps the rows
    before it.
    """
    path = resolve_output(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    partial = path.with_name(path.name + settings.partial_suffix)
    written = 0
    with open(partial, "w", newline="") as file:
        file.write(results_csv([]))
        file.flush()
        for row in rows:
            file.write(results_csv([row], header=False))
            file.flush()
            written += 1
    os.replace(partial, path)
    logger.info("Wrote %s rows to %s.", written, path)
    return path


def _evaluate_task(task: tuple) -> ResultRow:
    return evaluate_point(*task)


def sweep(config: SweepConfig) -> Path:
    """
    Run every point of a sweep and write one ResultRow per point.

    Rows come out in grid order whatever the worker count, and every seed is a
    function of the master seed and the point's index, so a rerun of the same
    config writes the same bytes.

    Returns:
        Path: The CSV file written.
    """
    tasks = [(config, index, *point) for index, point in enumerate(config.points())]
    with Timer(f"Sweep of {len(tasks)} points", logger):
        if config.workers > 1 and len(tasks) > 1:
            with Pool(processes=min(config.workers, len(tasks))) as pool:
                return write_results(pool.imap(_evaluate_task, tasks), config.output)
        return write_results(map(_evaluate_task, tasks), config.output)
