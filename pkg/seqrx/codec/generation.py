import logging
from dataclasses import replace

import numpy as np

from seqrx import settings
from seqrx.codec.codebook import Codebook, check_prior
from seqrx.constants import priors
from seqrx.ensembles import StateFamily, as_family
from seqrx.errors import InvalidParams, UnsupportedFamily
from seqrx.utils import derive_rng

logger = logging.getLogger(__name__)


def _draw_symbols(prior: str, n: int, M: int, ns: float, rng: np.random.Generator):
    shape = (M, n)
    if prior == priors.GAUSSIAN_ISO:
        # Circularly symmetric: E|alpha|^2 = ns split evenly over both quadratures.
        scale = np.sqrt(ns / 2.0)
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    if prior == priors.BPSK_AMP:
        signs = 1.0 - 2.0 * rng.integers(0, 2, size=shape)
        return np.sqrt(ns) * signs.astype(complex)
    if prior == priors.UNIFORM_PHASE:
        return np.mod(rng.uniform(0.0, 2.0 * np.pi, size=shape), 2.0 * np.pi)
    if prior == priors.BPSK_PHASE:
        return np.pi * rng.integers(0, 2, size=shape).astype(float)
    if prior == priors.PPM:
        if n != M:
            raise InvalidParams(f"Pulse-position codebooks need n == M, got n={n}, M={M}.")
        return np.sqrt(ns) * np.eye(M, dtype=complex)
    raise InvalidParams(f"Unknown prior: {prior!r}")


def generate_codebook(
    prior: str,
    family: StateFamily | str,
    n: int,
    M: int,
    ns: float,
    seed: int = settings.default_seed,
) -> Codebook:
    """
    Draw a random codebook with i.i.d. symbols.

    The energy constraint holds in expectation over the prior only; codewords are
    never rescaled.

    Args:
        prior: gaussian_iso (complex Gaussian, E|alpha|^2 = ns), bpsk_amp
            (+/- sqrt(ns)), uniform_phase ([0, 2 pi)), bpsk_phase ({0, pi}) or ppm
            (sqrt(ns) in slot m of codeword m, vacuum elsewhere; needs n == M).
        family: The symbol family, or its tag.
        n: Blocklength, n >= 1.
        M: Message count, M >= 1.
        ns: Mean photon number per symbol (coherent) or probe energy (reading).
        seed: Master seed. The symbols come from the "codebook" stream of it.

    Returns:
        Codebook: The generated codebook.

    Raises:
        InvalidParams: For out-of-range arguments or a prior that does not
            match the family.
    """
    if n < 1 or M < 1:
        raise InvalidParams(f"Codebooks need n >= 1 and M >= 1, got n={n}, M={M}.")
    if ns < 0 or not np.isfinite(ns):
        raise InvalidParams(f"Mean photon number must be >= 0, got {ns}.")
    family = as_family(family, ns)
    check_prior(prior, family)

    symbols = _draw_symbols(prior, n, M, ns, derive_rng(seed, "codebook"))
    logger.debug("Drew a %s codebook with n=%s, M=%s, seed=%s.", prior, n, M, seed)
    return Codebook(family=family, prior=prior, n=n, M=M, symbols=symbols, seed=seed)


def apply_loss(codebook: Codebook, eta: float) -> Codebook:
    """
    Send a coherent codebook through a pure-loss channel of transmissivity eta.

    Every amplitude alpha becomes sqrt(eta) alpha. Losses compose by multiplying
    the codebook's cumulative eta, so two channels in a row equal one channel of
    their product exactly.

    Raises:
        UnsupportedFamily: For reading codebooks.
        InvalidParams: If eta is outside [0, 1].
    """
    if codebook.family.is_reading:
        raise UnsupportedFamily("Loss is only modelled on coherent codebooks.")
    if not 0.0 <= eta <= 1.0:
        raise InvalidParams(f"Transmissivity must be in [0, 1], got {eta}.")
    return replace(codebook, eta=codebook.eta * eta)
