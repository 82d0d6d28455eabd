import json
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from seqrx import settings
from seqrx.constants import families, priors
from seqrx.ensembles import StateFamily
from seqrx.errors import IndexOutOfRange, InvalidParams
from seqrx.utils import frozen

logger = logging.getLogger(__name__)


@dataclass(frozen=True, kw_only=True, eq=False)
class Codebook:
    """
    A random codebook of M codewords of n symbols each.

    Attributes:
        family: The symbol state family. family.ns is the energy the prior was
            drawn with (coherent) or the probe energy (reading).
        prior: The prior tag the symbols were drawn from.
        n: Blocklength.
        M: Number of messages. Messages are numbered 1..M.
        symbols: M x n array of transmitted symbols. Complex amplitudes for the
            coherent family, phases in [0, 2 pi) for reading families. Read-only.
        seed: The seed the symbols were generated from.
        eta: Cumulative transmissivity of the channels the codebook went through.
        rng_id: The random generator algorithm the symbols came from.
        gaussian_method: The normal sampler behind gaussian_iso draws.
        expurgated_from: The message count before expurgation, if any.

    Methods:
        codeword: The received symbols of one message.
        to_dict: A JSON-ready dictionary.
        from_dict: Rebuild a Codebook from to_dict's output.
        to_file: Write the codebook as JSON.
        from_file: Load a codebook written by to_file.
    """

    family: StateFamily
    prior: str
    n: int
    M: int
    symbols: np.ndarray = field(repr=False)
    seed: int = settings.default_seed
    eta: float = 1.0
    rng_id: str = settings.rng_id
    gaussian_method: str = settings.gaussian_method
    expurgated_from: int | None = None

    def __post_init__(self):
        if self.prior not in priors.ALL:
            raise InvalidParams(f"Unknown prior: {self.prior!r}")
        if self.n < 1 or self.M < 1:
            raise InvalidParams(f"Codebooks need n >= 1 and M >= 1, got n={self.n}, M={self.M}.")
        if not 0.0 <= self.eta <= 1.0:
            raise InvalidParams(f"Transmissivity must be in [0, 1], got {self.eta}.")

        dtype = float if self.family.is_reading else complex
        symbols = np.array(self.symbols, dtype=dtype).reshape(self.M, self.n)
        if not np.all(np.isfinite(symbols)):
            raise InvalidParams("Codebook symbols must be finite.")
        if self.family.is_reading and np.any((symbols < 0) | (symbols >= 2 * np.pi)):
            raise InvalidParams("Reading symbols are phases in [0, 2 pi).")
        object.__setattr__(self, "symbols", frozen(symbols))

    @property
    def ns(self) -> float:
        return self.family.ns

    @property
    def rate(self) -> float:
        """Bits per channel use, log2(M) / n."""
        return float(np.log2(self.M) / self.n)

    @property
    def received_symbols(self) -> np.ndarray:
        """The symbols after loss: amplitudes scaled by sqrt(eta), phases as sent."""
        if self.family.is_reading or self.eta == 1.0:
            return self.symbols
        return frozen(self.symbols * np.sqrt(self.eta))

    def codeword(self, m: int) -> np.ndarray:
        """
        The received symbols of message m.

        Raises:
            IndexOutOfRange: If m is outside 1..M.
        """
        if not 1 <= m <= self.M:
            raise IndexOutOfRange(f"Message {m} is outside 1..{self.M}.")
        return self.received_symbols[m - 1]

    def with_messages(self, messages: list[int]) -> "Codebook":
        """A codebook keeping only the given messages (1-indexed), in order."""
        rows = [message - 1 for message in messages]
        return replace(
            self,
            M=len(rows),
            symbols=self.symbols[rows],
            expurgated_from=self.expurgated_from or self.M,
        )

    def to_dict(self) -> dict:
        if self.family.is_reading:
            symbols = self.symbols.tolist()
        else:
            symbols = np.stack([self.symbols.real, self.symbols.imag], axis=-1).tolist()
        return {
            "family": self.family.tag,
            "prior": self.prior,
            "n": self.n,
            "M": self.M,
            "ns": self.family.ns,
            "eta": self.eta,
            "seed": self.seed,
            "rng_id": self.rng_id,
            "gaussian_method": self.gaussian_method,
            "expurgated_from": self.expurgated_from,
            "symbols": symbols,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Codebook":
        family = StateFamily(data["family"], data["ns"])
        symbols = np.array(data["symbols"], dtype=float)
        if not family.is_reading:
            symbols = symbols[..., 0] + 1j * symbols[..., 1]
        return cls(
            family=family,
            prior=data["prior"],
            n=data["n"],
            M=data["M"],
            symbols=symbols,
            seed=data["seed"],
            eta=data.get("eta", 1.0),
            rng_id=data.get("rng_id", settings.rng_id),
            gaussian_method=data.get("gaussian_method", settings.gaussian_method),
            expurgated_from=data.get("expurgated_from"),
        )

    def to_file(self, filepath: str) -> None:
        """
        Write the codebook to a JSON file.

        Args:
            filepath: The path to the file to write to.
        """
        with open(filepath, "w") as file:
            json.dump(self.to_dict(), file, indent=3)

    @classmethod
    def from_file(cls, filepath: str) -> "Codebook":
        """
        Load a Codebook from a JSON file.

        Args:
            filepath: The path to the file to read from.

        Raises:
            InvalidParams: If the file cannot be read or is not a codebook.
        """
        try:
            with open(filepath, "r") as file:
                data = json.load(file)
            return cls.from_dict(data)
        except InvalidParams:
            raise
        except (OSError, ValueError, KeyError, TypeError, IndexError) as error:
            raise InvalidParams(f"Cannot load codebook {filepath}: {error}") from error


def check_prior(prior: str, family: StateFamily):
    """Amplitude priors go with coherent codebooks, phase priors with reading ones."""
    if prior not in priors.ALL:
        raise InvalidParams(f"Unknown prior: {prior!r}")
    if family.tag == families.COHERENT and prior not in priors.AMPLITUDE:
        raise InvalidParams(f"Prior {prior} draws phases; coherent codebooks need amplitudes.")
    if family.is_reading and prior not in priors.PHASE:
        raise InvalidParams(f"Prior {prior} draws amplitudes; reading codebooks need phases.")
