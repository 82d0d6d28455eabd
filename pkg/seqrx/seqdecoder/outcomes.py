import logging
from dataclasses import dataclass, field

from scipy.stats import binomtest

from seqrx.constants.branches import FAIL

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True)
class DecodeOutcome:
    """
    The result of decoding one transmission.

    Attributes:
        true_message: The message sent, 1..M.
        decoded: The decoded message, or FAIL (0) if every test answered "no".
        step_outcomes: The answer of each test in the order performed, True for
            "yes". Sequential engines stop at the first "yes".
        engine_id: The engine that produced the outcome.
    """

    true_message: int
    decoded: int
    step_outcomes: tuple[bool, ...]
    engine_id: str

    @property
    def correct(self) -> bool:
        return self.decoded == self.true_message

    @property
    def failed(self) -> bool:
        """Whether every test answered "no"."""
        return self.decoded == FAIL


@dataclass(frozen=True, kw_only=True)
class ErrorEstimate:
    """
    A Monte Carlo estimate of the average error probability.

    Attributes:
        trials: Number of simulated transmissions.
        errors: Trials with decoded != sent. FAIL outcomes count as errors.
        failures: Trials that ended in FAIL.
        p_hat: errors / trials.
        ci95: Wilson 95% interval (lo, hi) around p_hat.
        seed: The master seed of the trial streams.
        engine_id: The decoding engine.
        wall_ms: Wall-clock time of the run in milliseconds. Not compared, so
            reruns with the same seed are equal.
        span_method: How the engine factored the Gram matrix, if it did.
    """

    trials: int
    errors: int
    failures: int
    p_hat: float
    ci95: tuple[float, float]
    seed: int
    engine_id: str
    wall_ms: float = field(default=0.0, compare=False)
    span_method: str | None = None

    @classmethod
    def from_counts(
        cls,
        *,
        trials: int,
        errors: int,
        failures: int,
        seed: int,
        engine_id: str,
        wall_ms: float = 0.0,
        span_method: str | None = None,
    ) -> "ErrorEstimate":
        """Build an estimate with its Wilson interval from raw counts."""
        p_hat = errors / trials
        interval = binomtest(errors, trials).proportion_ci(
            confidence_level=0.95, method="wilson"
        )
        return cls(
            trials=trials,
            errors=errors,
            failures=failures,
            p_hat=p_hat,
            ci95=(min(max(0.0, interval.low), p_hat), max(min(1.0, interval.high), p_hat)),
            seed=seed,
            engine_id=engine_id,
            wall_ms=wall_ms,
            span_method=span_method,
        )

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials
